#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hsf/errors.hpp"

namespace hsf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Period-ell sequence of invertible d x d matrices (tangent maps along a
// periodic orbit). factors[0] is applied first.
struct PeriodicCocycle {
  int dim = 0;
  std::vector<Matrix> factors;

  int period() const { return static_cast<int>(factors.size()); }
  const Matrix& factor(long long step) const {  // cyclic access
    long long p = period();
    long long i = step % p;
    if (i < 0) i += p;
    return factors[static_cast<std::size_t>(i)];
  }
  void validate() const;  // dims match, factors invertible
};

// Sorted Lyapunov exponents at the period, repeated by multiplicity (nats/iter).
struct ExponentSpectrum {
  std::vector<double> values;  // nondecreasing

  explicit ExponentSpectrum(std::vector<double> v = {});
  int dim() const { return static_cast<int>(values.size()); }
  double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

// Columns span a k-dimensional subspace of R^d.
struct SubspaceBasis {
  Matrix vectors;  // d x k

  int ambient_dim() const { return static_cast<int>(vectors.rows()); }
  int subspace_dim() const { return static_cast<int>(vectors.cols()); }
};

}  // namespace hsf
