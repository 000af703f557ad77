#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsf/errors.hpp"

namespace hsf::symbolic {

// 0/1 transition matrix; no all-zero row or column.
struct TransitionMatrix {
  int size = 0;
  std::vector<std::uint8_t> entries;  // row-major

  static TransitionMatrix full(int n);
  std::uint8_t at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) +
                   static_cast<std::size_t>(j)];
  }
  void set(int i, int j, bool v) {
    entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) +
            static_cast<std::size_t>(j)] = v ? 1 : 0;
  }
  void validate() const;
  bool all_ones() const;
};

struct SftEntropy {
  double value = 0.0;        // log of the Perron root of the dominant component
  bool reducible = false;    // computed on the dominant irreducible component
  int component_size = 0;
};

// log spectral radius by power iteration to relative 1e-10; reducible input
// is reduced to its strongly connected components first (with a warning flag).
SftEntropy sft_entropy_report(const TransitionMatrix& t);
double sft_entropy(const TransitionMatrix& t);

// Bi-infinite admissible path: explicit window for indices
// [window_start, window_start + window.size()), eventually periodic tails on
// both sides. Tail words are read with their own period; the left tail fills
// indices below the window (repeating backwards), the right tail above.
struct ShiftPoint {
  std::vector<int> window;
  long long window_start = 0;
  std::vector<int> left_tail{0};   // ... t[p-1] | window
  std::vector<int> right_tail{0};  // window | t[0] t[1] ...

  int symbol(long long idx) const;
  ShiftPoint shifted(long long by) const {  // sigma^by: (sigma x)_i = x_{i+1}
    ShiftPoint p = *this;
    p.window_start -= by;
    return p;
  }
};

// 2^{-min{|k| : x_k != y_k}}; 0 iff equal, at most 2 (difference at k = -1..1
// is decided exactly from the periodic-tail representation).
double shift_metric(const ShiftPoint& x, const ShiftPoint& y);

// Exact number of admissible words of length n: 1^T T^{n-1} 1 (big integers).
// Returns the decimal string plus its natural log.
struct CylinderCount {
  std::string decimal;
  double log_value = 0.0;
};
CylinderCount cylinder_count(const TransitionMatrix& t, long long n);

// All admissible words of a given length (lexicographic).
std::vector<std::vector<int>> enumerate_words(const TransitionMatrix& t, int length);

}  // namespace hsf::symbolic
