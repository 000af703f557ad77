#pragma once

#include <cstdint>

#include "hsf/rng.hpp"
#include "hsf/types.hpp"

namespace hsf::linalg {

// Machine-zero threshold for "invertible when used as a cocycle factor".
inline constexpr double kSingularTol = 1e-12;

// Cyclic product of n cocycle steps: A_{n} ... A_2 A_1 (indices mod period).
// n = 0 yields the identity. Raises NumericalError when entries leave the
// representable range; growth bookkeeping belongs in log-domain ops instead.
Matrix cocycle_product(const PeriodicCocycle& c, long long n);

// (1/period) * log-moduli of the eigenvalues of the period product, sorted.
// The product is rebalanced by scalar factors (accumulated in log) so only
// the spread of the spectrum, not its size, is limited by double precision.
ExponentSpectrum lyapunov_exponents_periodic(const PeriodicCocycle& c);

// k-volume expansion factor of m on span(e):
//   sqrt(det(B^T m^T m B) / det(B^T B)),
// computed from two QR factorizations in the log domain.
double grassmann_jacobian(const Matrix& m, const SubspaceBasis& e);
double log_grassmann_jacobian(const Matrix& m, const SubspaceBasis& e);

// sum_{i<k} log s_i(m), singular values sorted descending; k = 0 gives 0.
double top_k_log_jacobian(const Matrix& m, int k);

// Seeded uniform k-frame (orthonormalized Gaussian columns).
SubspaceBasis sample_subspace(int dim, int k, Rng& rng);

// Sampling oracle for sup_E log Jac(m, E): `samples` uniform frames followed
// by a derivative-free hill climb from the best one (random tangent nudges
// with decaying step; only Jacobian evaluations, no SVD). Pure Monte Carlo
// misses the sup by ~5e-3 relative on 4x4 inputs at 1e4 samples.
double grassmann_sup_log_jacobian(const Matrix& m, int k, int samples,
                                  std::uint64_t seed, int polish_iters = 200);

// ||M^T J M - J|| in operator norm; 0 iff symplectic. dim must be even.
double symplectic_defect(const Matrix& m);

SubspaceBasis standard_lagrangian(int d);  // R^d x {0}^d in R^{2d}

struct LagrangianNormalizer {
  Matrix A;            // symplectic, A * span(basis) = R^d x {0}^d
  double norm_A;       // achieved operator norms (no universal constant is
  double norm_A_inv;   // certified; see the report fields)
};

// Prop.-style normal form: an orthogonal-symplectic rotation built from the
// polar frame [E, -JE], composed with the (A^T)^{-1} completion of the
// rotated frame. Input must be Lagrangian: |omega(e_i, e_j)| <= 1e-9.
LagrangianNormalizer lagrangian_to_standard(const SubspaceBasis& basis);

// Helpers shared with other modules.
Matrix random_matrix(int dim, Rng& rng);                 // iid standard normal
Matrix random_invertible(int dim, Rng& rng, double min_abs_det = 1e-3);
double operator_norm(const Matrix& m);
double min_singular_value(const Matrix& m);

}  // namespace hsf::linalg
