#include "hsf/domination.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>

#include "hsf/linalg.hpp"

namespace hsf::domination {

namespace {

Matrix orthonormalize(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

// Invariant subspace for a set of eigenvalues: kernel of the real polynomial
// prod (A - lambda I) over the set (conjugate pairs as quadratic factors),
// with algebraic multiplicity, so Jordan structure inside a cluster is covered.
std::optional<Matrix> invariant_subspace(const Matrix& a,
                                         const std::vector<std::complex<double>>& eigs) {
  int d = static_cast<int>(a.rows());
  Matrix p = Matrix::Identity(d, d);
  std::vector<bool> used(eigs.size(), false);
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (used[i]) continue;
    if (std::fabs(eigs[i].imag()) < 1e-12 * std::max(1.0, std::fabs(eigs[i].real()))) {
      p = (a - eigs[i].real() * Matrix::Identity(d, d)) * p;
      used[i] = true;
    } else {
      // pair with the conjugate inside the set
      bool paired = false;
      for (std::size_t j = i + 1; j < eigs.size(); ++j) {
        if (used[j]) continue;
        if (std::fabs(eigs[j].real() - eigs[i].real()) < 1e-9 &&
            std::fabs(eigs[j].imag() + eigs[i].imag()) < 1e-9) {
          used[j] = true;
          paired = true;
          break;
        }
      }
      if (!paired) return std::nullopt;  // conjugate falls across the cut
      double tr = 2.0 * eigs[i].real();
      double det = std::norm(eigs[i]);
      p = (a * a - tr * a + det * Matrix::Identity(d, d)) * p;
      used[i] = true;
    }
    double scale = p.cwiseAbs().maxCoeff();
    if (scale > 0) p /= scale;
  }
  int k = static_cast<int>(eigs.size());
  Eigen::JacobiSVD<Matrix> svd(p, Eigen::ComputeFullV);
  // kernel must have dimension exactly k: demand a decisive singular-value gap
  double s_keep = (k < d) ? svd.singularValues()(d - k - 1) : 0.0;
  double s_drop = svd.singularValues()(d - k);  // largest of the k smallest
  if (k < d && s_drop > 1e-7 * std::max(1.0, s_keep)) return std::nullopt;
  return Matrix(svd.matrixV().rightCols(k));
}

}  // namespace

SplittingScan invariant_splittings(const PeriodicCocycle& c) {
  c.validate();
  double shift = 0.0;
  Matrix prod = Matrix::Identity(c.dim, c.dim);
  for (int i = 0; i < c.period(); ++i) {
    prod = c.factor(i) * prod;
    double m = prod.cwiseAbs().maxCoeff();
    if (m > 1e100 || m < 1e-100) {
      prod /= m;
      shift += std::log(m);
    }
  }
  Eigen::EigenSolver<Matrix> es(prod);
  if (es.info() != Eigen::Success)
    throw NumericalError("invariant_splittings: eigen solver failed");

  std::vector<std::complex<double>> eigs(static_cast<std::size_t>(c.dim));
  for (int i = 0; i < c.dim; ++i) eigs[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  std::sort(eigs.begin(), eigs.end(),
            [](auto a, auto b) { return std::abs(a) < std::abs(b); });

  SplittingScan scan;
  double mod_max = std::abs(eigs.back());
  for (int cut = 1; cut < c.dim; ++cut) {
    double lo = std::abs(eigs[static_cast<std::size_t>(cut - 1)]);
    double hi = std::abs(eigs[static_cast<std::size_t>(cut)]);
    if (hi - lo <= kClusterRelTol * mod_max) {
      if (hi != lo || cut == 0) scan.unresolvable_cuts.push_back(cut);
      continue;  // inside a modulus cluster (complex pairs never split)
    }
    std::vector<std::complex<double>> small(eigs.begin(), eigs.begin() + cut);
    std::vector<std::complex<double>> large(eigs.begin() + cut, eigs.end());
    auto e0 = invariant_subspace(prod, small);
    auto f0 = invariant_subspace(prod, large);
    if (!e0 || !f0) {
      scan.unresolvable_cuts.push_back(cut);
      continue;
    }
    CandidateSplitting cand;
    cand.index = cut;
    cand.basis_E.push_back(orthonormalize(*e0));
    cand.basis_F.push_back(orthonormalize(*f0));
    for (int j = 1; j < c.period(); ++j) {
      cand.basis_E.push_back(orthonormalize(c.factor(j - 1) * cand.basis_E.back()));
      cand.basis_F.push_back(orthonormalize(c.factor(j - 1) * cand.basis_F.back()));
    }
    // closing the loop must return the same subspaces
    Matrix e_back = orthonormalize(c.factor(c.period() - 1) * cand.basis_E.back());
    Matrix f_back = orthonormalize(c.factor(c.period() - 1) * cand.basis_F.back());
    const Matrix& e_front = cand.basis_E.front();
    const Matrix& f_front = cand.basis_F.front();
    double res_e = (e_back * e_back.transpose() - e_front * e_front.transpose()).norm();
    double res_f = (f_back * f_back.transpose() - f_front * f_front.transpose()).norm();
    cand.invariance_residual = std::max(res_e, res_f);
    if (cand.invariance_residual > 1e-8) {
      scan.unresolvable_cuts.push_back(cut);
      continue;
    }
    scan.candidates.push_back(std::move(cand));
  }
  return scan;
}

DominationReport check_N_domination(const PeriodicCocycle& c, const CandidateSplitting& s,
                                    int N, int horizon) {
  c.validate();
  if (N < 1) throw PreconditionError("check_N_domination: N must be >= 1");
  if (horizon < N) throw PreconditionError("check_N_domination: horizon must be >= N");
  if (s.invariance_residual > 1e-8)
    throw PreconditionError("check_N_domination: splitting is not invariant (residual " +
                            std::to_string(s.invariance_residual) + ")");
  int ell = c.period();
  int d = c.dim;
  int k = s.index;

  DominationReport rep;
  rep.index = k;
  rep.horizon = horizon;

  // log worstRatio(n) over all base points, via per-step QR with the running
  // k x k (and (d-k) x (d-k)) triangular products rebalanced in log domain
  std::vector<double> log_ratio(static_cast<std::size_t>(horizon) + 1,
                                -std::numeric_limits<double>::infinity());
  for (int base = 0; base < ell; ++base) {
    Matrix qe = s.basis_E[static_cast<std::size_t>(base)];
    Matrix qf = s.basis_F[static_cast<std::size_t>(base)];
    Matrix pe = Matrix::Identity(k, k);
    Matrix pf = Matrix::Identity(d - k, d - k);
    double log_se = 0.0, log_sf = 0.0;
    for (int n = 1; n <= horizon; ++n) {
      const Matrix& a = c.factor(base + n - 1);
      Eigen::HouseholderQR<Matrix> qre(Matrix(a * qe));
      Eigen::HouseholderQR<Matrix> qrf(Matrix(a * qf));
      Matrix re = qre.matrixQR().topRows(k).triangularView<Eigen::Upper>();
      Matrix rf = qrf.matrixQR().topRows(d - k).triangularView<Eigen::Upper>();
      qe = qre.householderQ() * Matrix::Identity(d, k);
      qf = qrf.householderQ() * Matrix::Identity(d, d - k);
      pe = re * pe;
      pf = rf * pf;
      double me = pe.cwiseAbs().maxCoeff();
      double mf = pf.cwiseAbs().maxCoeff();
      if (me > 1e100 || me < 1e-100) { pe /= me; log_se += std::log(me); }
      if (mf > 1e100 || mf < 1e-100) { pf /= mf; log_sf += std::log(mf); }
      double num = log_se + std::log(linalg::operator_norm(pe));
      double den = log_sf + std::log(linalg::min_singular_value(pf));
      log_ratio[static_cast<std::size_t>(n)] =
          std::max(log_ratio[static_cast<std::size_t>(n)], num - den);
    }
  }
  for (int n = 1; n <= horizon; ++n)
    rep.worst_ratio[n] = std::exp(log_ratio[static_cast<std::size_t>(n)]);
  rep.period_ratio = (ell <= horizon) ? rep.worst_ratio[ell] : rep.worst_ratio[horizon];

  // smallest N0 with ratio <= 1/2 on [N0, horizon]
  int n0 = -1;
  const double log_half = std::log(0.5);
  for (int n = horizon; n >= 1; --n) {
    if (log_ratio[static_cast<std::size_t>(n)] <= log_half + 1e-12)
      n0 = n;
    else
      break;
  }
  // certify all n > horizon: one full period must contract the ratio and the
  // window must cover a whole period past N0
  bool window_ok = (n0 > 0) && (horizon >= n0 + ell - 1) && (ell <= horizon);
  rep.certified = window_ok && rep.period_ratio < 1.0;
  if (rep.certified) rep.smallest_N = n0;
  return rep;
}

std::vector<std::pair<int, int>> finest_dominated_splitting(const PeriodicCocycle& c, int Nmax) {
  if (Nmax < 1) throw PreconditionError("finest_dominated_splitting: Nmax must be >= 1");
  SplittingScan scan = invariant_splittings(c);
  int horizon = std::max({Nmax + c.period() - 1, 2 * c.period(), 8});
  std::vector<std::pair<int, int>> accepted;
  for (const auto& cand : scan.candidates) {
    DominationReport rep = check_N_domination(c, cand, 1, horizon);
    if (rep.smallest_N && *rep.smallest_N <= Nmax)
      accepted.emplace_back(cand.index, *rep.smallest_N);
  }
  std::sort(accepted.begin(), accepted.end());
  return accepted;
}

bool tn_weak(const PeriodicCocycle& c, int T, int N) {
  if (T < 1 || N < 1) throw PreconditionError("tn_weak: T, N must be >= 1");
  if (c.period() < T) return false;
  return finest_dominated_splitting(c, N).empty();
}

}  // namespace hsf::domination
