#include "hsf/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace hsf {

void PeriodicCocycle::validate() const {
  if (dim <= 0) throw PreconditionError("cocycle dim must be positive");
  if (factors.empty()) throw PreconditionError("cocycle period must be positive");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const Matrix& a = factors[i];
    if (a.rows() != dim || a.cols() != dim)
      throw PreconditionError("cocycle factor " + std::to_string(i) + " is not " +
                              std::to_string(dim) + "x" + std::to_string(dim));
    if (!a.allFinite())
      throw PreconditionError("cocycle factor " + std::to_string(i) + " has non-finite entries");
    Eigen::JacobiSVD<Matrix> svd(a);
    double smin = svd.singularValues().tail(1)(0);
    if (smin <= linalg::kSingularTol)
      throw PreconditionError("cocycle factor " + std::to_string(i) +
                              " is numerically singular (s_min=" + std::to_string(smin) + ")");
  }
}

ExponentSpectrum::ExponentSpectrum(std::vector<double> v) : values(std::move(v)) {
  std::sort(values.begin(), values.end());
}

namespace linalg {

Matrix cocycle_product(const PeriodicCocycle& c, long long n) {
  c.validate();
  if (n < 0) throw PreconditionError("cocycle_product: n must be >= 0");
  Matrix p = Matrix::Identity(c.dim, c.dim);
  for (long long i = 0; i < n; ++i) {
    p = c.factor(i) * p;
    if (!p.allFinite() || p.cwiseAbs().maxCoeff() > 1e300)
      throw NumericalError("cocycle_product: entries left the representable range at step " +
                           std::to_string(i + 1) + "; use log-domain operations");
  }
  return p;
}

// Period product with scalar rebalancing: returns B with A_period = e^shift * B.
static Matrix balanced_period_product(const PeriodicCocycle& c, double& log_shift) {
  Matrix p = Matrix::Identity(c.dim, c.dim);
  log_shift = 0.0;
  for (int i = 0; i < c.period(); ++i) {
    p = c.factor(i) * p;
    double m = p.cwiseAbs().maxCoeff();
    if (m <= 0.0 || !std::isfinite(m))
      throw NumericalError("period product collapsed or overflowed");
    if (m > 1e150 || m < 1e-150) {
      p /= m;
      log_shift += std::log(m);
    }
  }
  return p;
}

ExponentSpectrum lyapunov_exponents_periodic(const PeriodicCocycle& c) {
  c.validate();
  double shift = 0.0;
  Matrix a = balanced_period_product(c, shift);
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigen solver failed to converge on the period product");
  std::vector<double> ex;
  ex.reserve(static_cast<std::size_t>(c.dim));
  for (int i = 0; i < c.dim; ++i) {
    double mod = std::abs(es.eigenvalues()(i));
    if (mod <= 0.0)
      throw NumericalError("period product has a numerically zero eigenvalue");
    ex.push_back((std::log(mod) + shift) / c.period());
  }
  return ExponentSpectrum(std::move(ex));
}

// log |prod r_ii| of the QR factorization of a (rank must be full).
static double log_qr_volume(const Matrix& a, const char* what) {
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
  double s = 0.0;
  for (int i = 0; i < a.cols(); ++i) {
    double d = std::fabs(r(i, i));
    if (d <= 0.0 || !std::isfinite(d))
      throw PreconditionError(std::string(what) + ": rank-deficient basis");
    s += std::log(d);
  }
  return s;
}

double log_grassmann_jacobian(const Matrix& m, const SubspaceBasis& e) {
  if (e.vectors.rows() != m.rows())
    throw PreconditionError("grassmann_jacobian: basis/matrix dimension mismatch");
  if (e.subspace_dim() < 1 || e.subspace_dim() > e.ambient_dim())
    throw PreconditionError("grassmann_jacobian: need 1 <= k <= d");
  Eigen::JacobiSVD<Matrix> svd(e.vectors);
  double smin = svd.singularValues().tail(1)(0);
  double smax = svd.singularValues()(0);
  if (smin <= 1e-10 * std::max(1.0, smax))
    throw PreconditionError("grassmann_jacobian: basis is numerically rank-deficient");
  return log_qr_volume(m * e.vectors, "grassmann_jacobian(image)") -
         log_qr_volume(e.vectors, "grassmann_jacobian(basis)");
}

double grassmann_jacobian(const Matrix& m, const SubspaceBasis& e) {
  return std::exp(log_grassmann_jacobian(m, e));
}

double top_k_log_jacobian(const Matrix& m, int k) {
  int d = static_cast<int>(m.rows());
  if (k < 0 || k > d) throw PreconditionError("top_k_log_jacobian: need 0 <= k <= dim");
  if (k == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  double s = 0.0;
  for (int i = 0; i < k; ++i) {
    double sv = svd.singularValues()(i);
    if (sv <= 0.0) throw NumericalError("top_k_log_jacobian: zero singular value");
    s += std::log(sv);
  }
  return s;
}

SubspaceBasis sample_subspace(int dim, int k, Rng& rng) {
  Matrix g(dim, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = rng.next_gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, k);
  return SubspaceBasis{q};
}

double grassmann_sup_log_jacobian(const Matrix& m, int k, int samples,
                                  std::uint64_t seed, int polish_iters) {
  int d = static_cast<int>(m.rows());
  if (k < 1 || k > d) throw PreconditionError("grassmann_sup: need 1 <= k <= dim");
  Rng rng(seed);
  double best = -std::numeric_limits<double>::infinity();
  SubspaceBasis best_e{Matrix::Identity(d, k)};
  for (int s = 0; s < samples; ++s) {
    SubspaceBasis e = sample_subspace(d, k, rng);
    double v = log_grassmann_jacobian(m, e);
    if (v > best) {
      best = v;
      best_e = e;
    }
  }
  // local polish: random tangent nudges, step shrinks on failure
  double step = 0.3;
  for (int i = 0; i < polish_iters; ++i) {
    Matrix g(d, k);
    for (int c = 0; c < k; ++c)
      for (int r = 0; r < d; ++r) g(r, c) = rng.next_gaussian();
    Matrix cand = best_e.vectors + step * g;
    Eigen::HouseholderQR<Matrix> qr(cand);
    SubspaceBasis e{qr.householderQ() * Matrix::Identity(d, k)};
    double v = log_grassmann_jacobian(m, e);
    if (v > best) {
      best = v;
      best_e = e;
    } else {
      step *= 0.97;
    }
  }
  return best;
}

static Matrix symplectic_J(int d) {
  Matrix j = Matrix::Zero(2 * d, 2 * d);
  j.topRightCorner(d, d) = Matrix::Identity(d, d);
  j.bottomLeftCorner(d, d) = -Matrix::Identity(d, d);
  return j;
}

double operator_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double min_singular_value(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().tail(1)(0);
}

double symplectic_defect(const Matrix& m) {
  if (m.rows() % 2 != 0) throw PreconditionError("symplectic_defect: dimension must be even");
  int d = static_cast<int>(m.rows()) / 2;
  Matrix j = symplectic_J(d);
  return operator_norm(m.transpose() * j * m - j);
}

SubspaceBasis standard_lagrangian(int d) {
  Matrix b = Matrix::Zero(2 * d, d);
  b.topRows(d) = Matrix::Identity(d, d);
  return SubspaceBasis{b};
}

LagrangianNormalizer lagrangian_to_standard(const SubspaceBasis& basis) {
  int two_d = basis.ambient_dim();
  int d = basis.subspace_dim();
  if (two_d != 2 * d)
    throw PreconditionError("lagrangian_to_standard: need a d-frame in R^{2d}");
  Matrix j = symplectic_J(d);

  Matrix omega = basis.vectors.transpose() * j * basis.vectors;  // omega(e_i, e_j)
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if (std::fabs(omega(a, b)) > 1e-9) {
        std::ostringstream os;
        os << "lagrangian_to_standard: omega(e_" << a + 1 << ", e_" << b + 1
           << ") = " << omega(a, b) << " exceeds 1e-9; subspace is not Lagrangian";
        throw PreconditionError(os.str());
      }

  // Orthonormal frame for the same subspace via the polar factor.
  Eigen::JacobiSVD<Matrix> svd(basis.vectors, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues().tail(1)(0) <= 1e-10)
    throw PreconditionError("lagrangian_to_standard: frame is numerically rank-deficient");
  Matrix e = svd.matrixU() * svd.matrixV().transpose();  // 2d x d, orthonormal

  // [E, -JE] is orthogonal and symplectic and maps the standard Lagrangian
  // onto span(E); its transpose rotates span(basis) into standard position.
  Matrix u(two_d, two_d);
  u.leftCols(d) = e;
  u.rightCols(d) = -j * e;
  Matrix q = u.transpose();

  // Completion of the rotated (now-horizontal) frame: [[A,0],[C,(A^T)^{-1}]]
  // sends the standard basis to the rotated frame vectors; invert it.
  Matrix rot = q * basis.vectors;  // ~ [A; C] with C ~ 0
  Matrix blockA = rot.topRows(d);
  Matrix blockC = rot.bottomRows(d);
  Matrix t = Matrix::Zero(two_d, two_d);
  t.topLeftCorner(d, d) = blockA;
  t.bottomLeftCorner(d, d) = blockC;
  t.bottomRightCorner(d, d) = blockA.transpose().inverse();
  Matrix a = t.inverse() * q;

  LagrangianNormalizer out;
  out.A = a;
  out.norm_A = operator_norm(a);
  out.norm_A_inv = operator_norm(a.inverse());
  return out;
}

Matrix random_matrix(int dim, Rng& rng) {
  Matrix m(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) m(i, j) = rng.next_gaussian();
  return m;
}

Matrix random_invertible(int dim, Rng& rng, double min_abs_det) {
  for (;;) {
    Matrix m = random_matrix(dim, rng);
    if (std::fabs(m.determinant()) >= min_abs_det) return m;
  }
}

}  // namespace linalg
}  // namespace hsf
