#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hsf/types.hpp"

namespace hsf::exponents {

// Delta(f,p) = min(sum of positive exponents, sum of |negative| exponents).
struct DeltaReport {
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double delta = 0.0;
  std::map<std::string, double> restricted;  // per-subbundle label
};

// Ordered partition of {1..d} into contiguous exponent-index ranges.
struct SplittingLabel {
  // blocks as [first, last] 1-based inclusive ranges, in order
  std::vector<std::pair<int, int>> blocks;

  void validate(int dim) const;
  static SplittingLabel trivial(int dim) { return SplittingLabel{{{1, dim}}}; }
};

DeltaReport delta(const ExponentSpectrum& spec);

// Delta of the sub-spectrum on 1-based inclusive [first, last].
double delta_restricted(const ExponentSpectrum& spec, int first, int last);

struct DeltaStarResult {
  double value = 0.0;
  bool empty_family = false;  // sup over an empty set reported as 0 + warning
  bool lower_bound = true;    // finite families only bound the paper's sup
};

// sup over cocycles and their splitting blocks of delta_restricted.
DeltaStarResult delta_star(const std::vector<PeriodicCocycle>& cocycles,
                           const std::vector<SplittingLabel>& splittings);

// delta(spec) - entropyEstimate; negative values flag an estimator above the
// Ruelle bound.
double ruelle_gap(double entropy_estimate, const ExponentSpectrum& spec);

}  // namespace hsf::exponents
