#include "hsf/exponents.hpp"

#include <algorithm>

#include "hsf/linalg.hpp"

namespace hsf::exponents {

void SplittingLabel::validate(int dim) const {
  if (blocks.empty()) throw PreconditionError("splitting has no blocks");
  int expected = 1;
  for (auto [a, b] : blocks) {
    if (a != expected || b < a)
      throw PreconditionError("splitting blocks must be contiguous, ordered and non-empty");
    expected = b + 1;
  }
  if (expected != dim + 1)
    throw PreconditionError("splitting blocks must cover 1..d");
}

DeltaReport delta(const ExponentSpectrum& spec) {
  DeltaReport r;
  for (double l : spec.values) {
    r.delta_plus += std::max(l, 0.0);
    r.delta_minus += std::max(-l, 0.0);
  }
  r.delta = std::min(r.delta_plus, r.delta_minus);
  return r;
}

double delta_restricted(const ExponentSpectrum& spec, int first, int last) {
  if (first < 1 || last > spec.dim() || first > last)
    throw PreconditionError("delta_restricted: block out of range");
  double plus = 0.0, minus = 0.0;
  for (int i = first; i <= last; ++i) {
    plus += std::max(spec[i - 1], 0.0);
    minus += std::max(-spec[i - 1], 0.0);
  }
  return std::min(plus, minus);
}

DeltaStarResult delta_star(const std::vector<PeriodicCocycle>& cocycles,
                           const std::vector<SplittingLabel>& splittings) {
  if (cocycles.size() != splittings.size())
    throw PreconditionError("delta_star: one splitting per cocycle required");
  DeltaStarResult out;
  if (cocycles.empty()) {
    out.empty_family = true;  // the paper's sup over an empty set is unaddressed
    return out;
  }
  double best = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < cocycles.size(); ++i) {
    splittings[i].validate(cocycles[i].dim);
    ExponentSpectrum spec = linalg::lyapunov_exponents_periodic(cocycles[i]);
    for (auto [a, b] : splittings[i].blocks) {
      double v = delta_restricted(spec, a, b);
      best = any ? std::max(best, v) : v;
      any = true;
    }
  }
  out.value = best;
  return out;
}

double ruelle_gap(double entropy_estimate, const ExponentSpectrum& spec) {
  if (entropy_estimate < 0.0)
    throw PreconditionError("ruelle_gap: entropy estimate must be >= 0");
  return delta(spec).delta - entropy_estimate;
}

}  // namespace hsf::exponents
