#pragma once

#include <cstdint>
#include <vector>

namespace hsf {

// SplitMix64. Small, fast, and fully specified here so that seeded runs are
// byte-reproducible across platforms (std::shuffle and distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n) by rejection-free modulo of a 64-bit draw
  // (bias < 2^-53 for the n used here)
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  // standard normal via Box-Muller (deterministic pairing)
  double next_gaussian();

  // Fisher-Yates; explicit so the permutation is platform-independent
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hsf
