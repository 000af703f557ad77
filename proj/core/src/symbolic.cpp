#include "hsf/symbolic.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numeric>

namespace hsf::symbolic {

using boost::multiprecision::cpp_int;

TransitionMatrix TransitionMatrix::full(int n) {
  TransitionMatrix t;
  t.size = n;
  t.entries.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 1);
  return t;
}

void TransitionMatrix::validate() const {
  if (size <= 0) throw PreconditionError("transition matrix must be non-empty");
  if (entries.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size))
    throw PreconditionError("transition matrix entry count mismatch");
  for (int i = 0; i < size; ++i) {
    bool row = false, col = false;
    for (int j = 0; j < size; ++j) {
      row |= at(i, j) != 0;
      col |= at(j, i) != 0;
    }
    if (!row) throw PreconditionError("transition matrix row " + std::to_string(i) + " is all zero");
    if (!col) throw PreconditionError("transition matrix column " + std::to_string(i) + " is all zero");
  }
}

bool TransitionMatrix::all_ones() const {
  return std::all_of(entries.begin(), entries.end(), [](std::uint8_t v) { return v == 1; });
}

namespace {

// Tarjan SCC on the directed graph of the matrix.
std::vector<std::vector<int>> strongly_connected_components(const TransitionMatrix& t) {
  int n = t.size;
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int next = 0;

  struct Frame { int v; int j; };
  for (int s = 0; s < n; ++s) {
    if (index[static_cast<std::size_t>(s)] != -1) continue;
    std::vector<Frame> call{{s, 0}};
    index[static_cast<std::size_t>(s)] = low[static_cast<std::size_t>(s)] = next++;
    stack.push_back(s);
    on_stack[static_cast<std::size_t>(s)] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.j < n) {
        int w = f.j++;
        if (!t.at(f.v, w)) continue;
        if (index[static_cast<std::size_t>(w)] == -1) {
          index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = next++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          call.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty())
          low[static_cast<std::size_t>(call.back().v)] =
              std::min(low[static_cast<std::size_t>(call.back().v)], low[static_cast<std::size_t>(v)]);
        if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            comp.push_back(w);
          } while (w != v);
          comps.push_back(std::move(comp));
        }
      }
    }
  }
  return comps;
}

double perron_log(const TransitionMatrix& t, const std::vector<int>& nodes) {
  int m = static_cast<int>(nodes.size());
  if (m == 1 && !t.at(nodes[0], nodes[0])) return -std::numeric_limits<double>::infinity();
  std::vector<double> v(static_cast<std::size_t>(m), 1.0), w(static_cast<std::size_t>(m), 0.0);
  double log_scale = 0.0;
  double prev = -1.0;
  for (int it = 0; it < 100000; ++it) {
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int j = 0; j < m; ++j)
        if (t.at(nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]))
          s += v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = s;
    }
    double norm = 0.0;
    for (double x : w) norm = std::max(norm, x);
    if (norm == 0.0) return -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] / norm;
    log_scale = std::log(norm);
    if (prev > 0.0 && std::fabs(norm - prev) <= 1e-10 * norm && it > 3) {
      // Rayleigh-style polish on the converged vector
      return std::log(norm);
    }
    prev = norm;
  }
  throw NumericalError("sft_entropy: power iteration did not converge to 1e-10");
  (void)log_scale;
}

}  // namespace

SftEntropy sft_entropy_report(const TransitionMatrix& t) {
  t.validate();
  auto comps = strongly_connected_components(t);
  SftEntropy out;
  out.reducible = comps.size() > 1;
  double best = -std::numeric_limits<double>::infinity();
  int best_size = 0;
  for (const auto& comp : comps) {
    double lg = perron_log(t, comp);
    if (lg > best) {
      best = lg;
      best_size = static_cast<int>(comp.size());
    }
  }
  if (!std::isfinite(best))
    throw NumericalError("sft_entropy: no recurrent component");
  out.value = best < 0 ? 0.0 : best;  // a bare periodic loop has entropy 0
  out.component_size = best_size;
  return out;
}

double sft_entropy(const TransitionMatrix& t) { return sft_entropy_report(t).value; }

int ShiftPoint::symbol(long long idx) const {
  long long rel = idx - window_start;
  long long len = static_cast<long long>(window.size());
  if (rel >= 0 && rel < len) return window[static_cast<std::size_t>(rel)];
  if (rel >= len) {
    long long off = (rel - len) % static_cast<long long>(right_tail.size());
    return right_tail[static_cast<std::size_t>(off)];
  }
  long long p = static_cast<long long>(left_tail.size());
  long long off = ((-rel - 1) % p);  // counting backwards from the window
  return left_tail[static_cast<std::size_t>(p - 1 - off)];
}

double shift_metric(const ShiftPoint& x, const ShiftPoint& y) {
  // Decidable: if the points agree on [-K, K] with K past both window ends
  // plus one lcm of the tail periods, the periodic tails agree everywhere.
  long long lo = std::min(x.window_start, y.window_start);
  long long hi = std::max(x.window_start + static_cast<long long>(x.window.size()),
                          y.window_start + static_cast<long long>(y.window.size()));
  long long right_span = std::lcm(static_cast<long long>(x.right_tail.size()),
                                  static_cast<long long>(y.right_tail.size()));
  long long left_span = std::lcm(static_cast<long long>(x.left_tail.size()),
                                 static_cast<long long>(y.left_tail.size()));
  long long K = std::max({hi + right_span, left_span - lo, 1LL});
  for (long long k = 0; k <= K; ++k) {
    if (x.symbol(k) != y.symbol(k) || x.symbol(-k) != y.symbol(-k))
      return std::pow(2.0, -static_cast<double>(k));
  }
  return 0.0;
}

CylinderCount cylinder_count(const TransitionMatrix& t, long long n) {
  t.validate();
  if (n < 1) throw PreconditionError("cylinder_count: n must be >= 1");
  int m = t.size;
  std::vector<cpp_int> v(static_cast<std::size_t>(m), 1);
  for (long long step = 1; step < n; ++step) {
    std::vector<cpp_int> w(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
      cpp_int s = 0;
      for (int j = 0; j < m; ++j)
        if (t.at(i, j)) s += v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = std::move(s);
    }
    v = std::move(w);
  }
  cpp_int total = 0;
  for (const auto& x : v) total += x;
  CylinderCount out;
  out.decimal = total.str();
  // log via the top bits
  cpp_int tmp = total;
  long long bits = 0;
  while (tmp > std::numeric_limits<std::uint64_t>::max()) {
    tmp >>= 32;
    bits += 32;
  }
  out.log_value = std::log(static_cast<double>(static_cast<std::uint64_t>(tmp))) +
                  static_cast<double>(bits) * std::log(2.0);
  return out;
}

std::vector<std::vector<int>> enumerate_words(const TransitionMatrix& t, int length) {
  t.validate();
  if (length < 1) throw PreconditionError("enumerate_words: length must be >= 1");
  std::vector<std::vector<int>> words;
  std::vector<int> cur;
  cur.reserve(static_cast<std::size_t>(length));
  struct Rec {
    const TransitionMatrix& t;
    int length;
    std::vector<std::vector<int>>& words;
    std::vector<int>& cur;
    void go(int depth, int prev) {
      if (depth == length) {
        words.push_back(cur);
        return;
      }
      for (int s = 0; s < t.size; ++s) {
        if (depth > 0 && !t.at(prev, s)) continue;
        cur.push_back(s);
        go(depth + 1, s);
        cur.pop_back();
      }
    }
  } rec{t, length, words, cur};
  rec.go(0, 0);
  return words;
}

}  // namespace hsf::symbolic
