#include "hsf/horseshoe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "hsf/exponents.hpp"
#include "hsf/rng.hpp"

namespace hsf::horseshoe {

namespace {
// slack absorbing outward rounding on the log-domain equality coordinates
constexpr double kLogSlack = 1e-12;
}

void ConstructionParams::validate() const {
  if (d0 < 2) throw PreconditionError("params: d0 must be >= 2");
  if (k < 1 || k >= d0) throw PreconditionError("params: need 1 <= k < d0");
  if (static_cast<int>(lambda.size()) != d0 || static_cast<int>(mu.size()) != d0)
    throw PreconditionError("params: lambda and mu must have d0 entries");
  for (int i = 1; i < d0; ++i)
    if (lambda[static_cast<std::size_t>(i)] < lambda[static_cast<std::size_t>(i - 1)])
      throw PreconditionError("params: lambda must be nondecreasing");
  // homothety-prepared: stable block constant negative, unstable constant positive
  for (int i = 0; i < k; ++i) {
    if (lambda[static_cast<std::size_t>(i)] >= 0)
      throw PreconditionError("params: stable exponents must be negative");
    if (lambda[static_cast<std::size_t>(i)] != lambda[0])
      throw PreconditionError("params: stable block must be a homothety (equal exponents)");
  }
  for (int i = k; i < d0; ++i) {
    if (lambda[static_cast<std::size_t>(i)] <= 0)
      throw PreconditionError("params: unstable exponents must be positive");
    if (lambda[static_cast<std::size_t>(i)] != lambda[static_cast<std::size_t>(k)])
      throw PreconditionError("params: unstable block must be a homothety (equal exponents)");
  }
  for (double m_i : mu)
    if (m_i == 0.0 || !std::isfinite(m_i))
      throw PreconditionError("params: mu entries must be nonzero finite");
  if (!(eta > 0.0) || eta >= 1.0)
    throw PreconditionError("params: eta must lie in (0,1)");
  if (!(rho > 0.0)) throw PreconditionError("params: rho must be positive");
  if (n < 1 || ell < 1 || m < 1)
    throw PreconditionError("params: n, ell, m must be >= 1");
  for (double m_i : mu) {
    double need = std::max(std::fabs(m_i), 1.0 / std::fabs(m_i));
    if (C < need * (1.0 - 1e-12))
      throw PreconditionError("params: C must bound max(|mu_i|, |mu_i|^-1); need C >= " +
                              std::to_string(need));
  }
  if (!translation.empty() && static_cast<int>(translation.size()) != d0)
    throw PreconditionError("params: translation must have d0 entries when given");
}

bool ConstructionParams::zero_sum_lambda(double tol) const {
  double s = 0.0;
  for (double l : lambda) s += l;
  return std::fabs(s) <= tol;
}

bool ConstructionParams::unit_mu_product(double tol) const {
  double s = 0.0;
  for (double m_i : mu) s += std::log(std::fabs(m_i));
  return std::fabs(s) <= tol;
}

DerivedScales derive_scales(const ConstructionParams& p) {
  p.validate();
  const int d = p.d0;
  DerivedScales s;
  s.return_time = p.ell + p.m + 2 * p.n;

  s.Lambda.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    double l_i = p.lambda[static_cast<std::size_t>(i)];
    double l_next = p.lambda[static_cast<std::size_t>((i + 1) % d)];  // indices mod d0
    double lg = std::log(std::fabs(p.mu[static_cast<std::size_t>(i)])) +
                (p.ell + p.n) * l_i + p.n * l_next;
    s.Lambda[static_cast<std::size_t>(i)] =
        SignedLog::from_log(lg, p.mu[static_cast<std::size_t>(i)] > 0 ? 1 : -1);
  }

  double log_delta = -std::log(p.C) +
                     (p.lambda[0] + p.lambda[static_cast<std::size_t>(d - 1)]) * p.n +
                     std::log(p.rho);
  s.delta = SignedLog::from_log(log_delta);

  // delta_i by the quoted recursions, kept as running log sums so that the
  // verification recomputes bit-identical values on the equality coordinates
  s.delta_sides.assign(static_cast<std::size_t>(d), SignedLog::zero());
  s.delta_sides[0] = s.delta;
  for (int i = 1; i < p.k; ++i)
    s.delta_sides[static_cast<std::size_t>(i)] =
        s.Lambda[static_cast<std::size_t>(i - 1)].abs() *
        s.delta_sides[static_cast<std::size_t>(i - 1)];
  {
    SignedLog acc = SignedLog::one();
    for (int i = d - 1; i >= p.k; --i) {
      acc = acc * s.Lambda[static_cast<std::size_t>(i)].abs();
      s.delta_sides[static_cast<std::size_t>(i)] = s.delta / acc;
    }
  }
  for (int i = 0; i < d; ++i) {
    if (s.delta_sides[static_cast<std::size_t>(i)].lg > s.delta.lg + kLogSlack)
      throw ConstructionInfeasible(
          "derive_scales: delta_" + std::to_string(i + 1) +
          " exceeds delta (log excess " +
          std::to_string(s.delta_sides[static_cast<std::size_t>(i)].lg - s.delta.lg) +
          "); the cocycle scales do not contract the rectangle");
  }

  // L < (eta/8) e^{n(l_{k+1}-l_1)} min(prod_{i<=k} Lambda_i^{-1}, prod_{i>k} Lambda_i)
  double log_stable_prod = 0.0, log_unstable_prod = 0.0;
  for (int i = 0; i < p.k; ++i) log_stable_prod += s.Lambda[static_cast<std::size_t>(i)].lg;
  for (int i = p.k; i < d; ++i) log_unstable_prod += s.Lambda[static_cast<std::size_t>(i)].lg;
  double gap = p.lambda[static_cast<std::size_t>(p.k)] - p.lambda[0];
  s.log_L_bound = std::log(p.eta / 8.0) + p.n * gap +
                  std::min(-log_stable_prod, log_unstable_prod);
  s.log_L = s.log_L_bound - std::log(2.0);  // documented constant factor 1/2

  if (s.log_L < std::log(2.0)) {
    std::ostringstream os;
    os << "construction infeasible: L = floor(bound/2) < 2; the oscillation budget "
       << "(eta/8) e^{n(l_{k+1}-l_1)} min(1/(Lambda_1...Lambda_k), Lambda_{k+1}...Lambda_{d0}) "
       << "= exp(" << s.log_L_bound << ") is too small to host two oscillations";
    throw ConstructionInfeasible(os.str());
  }
  if (s.log_L < 62.0 * std::log(2.0)) {
    auto L = static_cast<std::uint64_t>(std::floor(std::exp(s.log_L)));
    if (L < 2) throw ConstructionInfeasible("construction infeasible: L < 2");
    s.L_exact = L;
    s.log_L = std::log(static_cast<double>(L));
  }
  s.entropy = s.log_L / s.return_time;
  return s;
}

// ---------------------------------------------------------------------------
// Oscillation profile
// ---------------------------------------------------------------------------

namespace {
// one window of the train on [-1/2, 1/2]: identity on [-1/4, 1/4], cubic
// Hermite ramp to 0 at +-1/2 with zero slope
double bump(double x) {
  double ax = std::fabs(x);
  if (ax <= 0.25) return x;
  if (ax >= 0.5) return 0.0;
  double t = (ax - 0.25) * 4.0;  // in (0,1)
  double h = (2 * t * t * t - 3 * t * t + 1) * 0.25 + (t * t * t - 2 * t * t + t) * 0.25;
  return x < 0 ? -h : h;
}
double bump_deriv(double x) {
  double ax = std::fabs(x);
  if (ax <= 0.25) return 1.0;
  if (ax >= 0.5) return 0.0;
  double t = (ax - 0.25) * 4.0;
  return 9 * t * t - 10 * t + 1;  // even in x since the bump is odd
}
}  // namespace

OscillationProfile::OscillationProfile(double L) : L_(L) {
  if (!(L >= 2.0)) throw PreconditionError("oscillation_profile: L must be >= 2");
}

double OscillationProfile::operator()(double x) const {
  if (x <= -0.5 || x >= L_ - 0.5) return 0.0;
  double j = std::floor(x + 0.5);  // nearest window center in 0..L-1
  return bump(x - j);
}

double OscillationProfile::derivative(double x) const {
  if (x <= -0.5 || x >= L_ - 0.5) return 0.0;
  double j = std::floor(x + 0.5);
  return bump_deriv(x - j);
}

double OscillationProfile::max_abs() const {
  double t = 1.0 / 9.0;  // interior maximum of the ramp cubic
  return (2 * t * t * t - 3 * t * t + 1) * 0.25 + (t * t * t - 2 * t * t + t) * 0.25;
}

double OscillationProfile::max_abs_derivative() const { return 16.0 / 9.0; }

OscillationProfile oscillation_profile(double L) { return OscillationProfile(L); }

// ---------------------------------------------------------------------------
// Model assembly
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<SignedLog>> zero_matrix(int d) {
  return std::vector<std::vector<SignedLog>>(
      static_cast<std::size_t>(d),
      std::vector<SignedLog>(static_cast<std::size_t>(d), SignedLog::zero()));
}

std::vector<std::vector<SignedLog>> identity_matrix(int d) {
  auto m = zero_matrix(d);
  for (int i = 0; i < d; ++i)
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = SignedLog::one();
  return m;
}

}  // namespace

AffineHorseshoeModel assemble_model(const ConstructionParams& p, const DerivedScales& s,
                                    double eta_scale) {
  p.validate();
  if (!(eta_scale > 0)) throw PreconditionError("assemble_model: eta_scale must be positive");
  const int d = p.d0;
  const int k = p.k;
  const double eta = p.eta / eta_scale;  // eta_scale > 1 inflates the shear strength
  const double l1 = p.lambda[0];
  const double lk = p.lambda[static_cast<std::size_t>(k - 1)];
  const double lk1 = p.lambda[static_cast<std::size_t>(k)];
  const double ld = p.lambda[static_cast<std::size_t>(d - 1)];

  AffineHorseshoeModel model;
  model.params = p;
  model.scales = s;
  model.conservative = p.zero_sum_lambda() && p.unit_mu_product();

  std::vector<SignedLog> zero_off(static_cast<std::size_t>(d), SignedLog::zero());
  double sum_lambda = 0.0, sum_log_mu = 0.0;
  for (double l : p.lambda) sum_lambda += l;
  for (double m_i : p.mu) sum_log_mu += std::log(std::fabs(m_i));

  AffinePiece lin;  // one linear homothety step diag(e^{lambda_i})
  lin.label = "linear-block";
  lin.steps = 1;
  lin.repeat = p.ell;
  lin.linear = zero_matrix(d);
  for (int i = 0; i < d; ++i)
    lin.linear[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
        SignedLog::from_log(p.lambda[static_cast<std::size_t>(i)]);
  lin.offset = zero_off;
  lin.log_abs_det = sum_lambda;

  // shear-1 near g^{-n}(tau): x'_{d0} += eta^{-1} e^{n(l_k - l_{d0})} (mu_k/mu_{d0}) x_k
  AffinePiece sh1;
  sh1.label = "shear-1";
  sh1.steps = 0;
  sh1.linear = identity_matrix(d);
  {
    double ratio = p.mu[static_cast<std::size_t>(k - 1)] / p.mu[static_cast<std::size_t>(d - 1)];
    sh1.linear[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(k - 1)] =
        SignedLog::from_log(std::log(std::fabs(ratio) / eta) + p.n * (lk - ld),
                            ratio > 0 ? 1 : -1);
  }
  sh1.offset = zero_off;
  sh1.log_abs_det = 0.0;

  AffinePiece lin_n = lin;
  lin_n.repeat = p.n;

  AffinePiece tang;  // m-step tangency transit: E_i -> E_{i+1} with factor mu_i
  tang.label = "tangency";
  tang.steps = p.m;
  tang.linear = zero_matrix(d);
  for (int i = 0; i < d; ++i)
    tang.linear[static_cast<std::size_t>((i + 1) % d)][static_cast<std::size_t>(i)] =
        SignedLog::from_double(p.mu[static_cast<std::size_t>(i)]);
  tang.offset = zero_off;
  tang.log_abs_det = sum_log_mu;

  // oscillation near g^m(tau): x'_{k+1} -= eta e^{-n l_1} (delta/L) Phi(e^{n l_1} L x_1/delta)
  AffinePiece osc;
  osc.label = "oscillation";
  osc.steps = 0;
  osc.linear = identity_matrix(d);
  osc.is_oscillation = true;
  osc.offset = zero_off;
  osc.log_abs_det = 0.0;

  AffinePiece sh2;  // x'_1 += eta^{-1} e^{n(l_1 - l_{k+1})} x_{k+1} + a_1; x'_i += a_i
  sh2.label = "shear-2";
  sh2.steps = 0;
  sh2.linear = identity_matrix(d);
  sh2.linear[0][static_cast<std::size_t>(k)] =
      SignedLog::from_log(std::log(1.0 / eta) + p.n * (l1 - lk1));
  sh2.offset = zero_off;
  if (!p.translation.empty())
    for (int i = 0; i < d; ++i)
      sh2.offset[static_cast<std::size_t>(i)] =
          SignedLog::from_double(p.translation[static_cast<std::size_t>(i)]);
  sh2.log_abs_det = 0.0;

  model.pieces = {lin, sh1, lin_n, tang, osc, lin_n, sh2};

  // Closed-form branch return map z = M x + (j delta/L) u + a:
  //   z_1     = eta^{-1} e^{n(l_1-l_{k+1})} Lambda_k x_k  + j delta/L
  //   z_{k+1} = -eta e^{n(l_{k+1}-l_1)} Lambda_{d0} x_{d0} + eta e^{n(l_{k+1}-l_1)} j delta/L
  //   z_i     = Lambda_{i-1} x_{i-1}   (i != 1, k+1)
  model.branch_linear = zero_matrix(d);
  model.branch_offset_unit.assign(static_cast<std::size_t>(d), SignedLog::zero());
  for (int i = 0; i < d; ++i) {
    if (i == 0) {
      model.branch_linear[0][static_cast<std::size_t>(k - 1)] =
          SignedLog::from_log(std::log(1.0 / eta) + p.n * (l1 - lk1)) *
          s.Lambda[static_cast<std::size_t>(k - 1)];
    } else if (i == k) {
      model.branch_linear[static_cast<std::size_t>(k)][static_cast<std::size_t>(d - 1)] =
          (SignedLog::from_log(std::log(eta) + p.n * (lk1 - l1)) *
           s.Lambda[static_cast<std::size_t>(d - 1)])
              .neg();
    } else {
      model.branch_linear[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] =
          s.Lambda[static_cast<std::size_t>(i - 1)];
    }
  }
  model.branch_offset_unit[0] = SignedLog::one();
  model.branch_offset_unit[static_cast<std::size_t>(k)] =
      SignedLog::from_log(std::log(eta) + p.n * (lk1 - l1));
  return model;
}

Vector AffineHorseshoeModel::evaluate_return(const Vector& x) const {
  const int d = params.d0;
  if (x.size() != d) throw PreconditionError("evaluate_return: dimension mismatch");
  double delta = scales.delta.to_double();
  double L = std::exp(scales.log_L);
  if (!std::isfinite(delta) || delta == 0.0 || !std::isfinite(L))
    throw NumericalError("evaluate_return: scales leave double range; use the branch map");
  OscillationProfile phi(L);
  Vector v = x;
  for (const auto& piece : pieces) {
    for (int r = 0; r < piece.repeat; ++r) {
      if (piece.is_oscillation) {
        double arg = std::exp(params.n * params.lambda[0]) * L * v(0) / delta;
        v(params.k) -=
            params.eta * std::exp(-params.n * params.lambda[0]) * (delta / L) * phi(arg);
        continue;
      }
      Vector w = Vector::Zero(d);
      for (int i = 0; i < d; ++i) {
        double acc = 0.0;
        for (int j = 0; j < d; ++j) {
          const SignedLog& e =
              piece.linear[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          if (!e.is_zero()) acc += e.to_double() * v(j);
        }
        w(i) = acc + piece.offset[static_cast<std::size_t>(i)].to_double();
      }
      v = w;
      if (!v.allFinite()) throw NumericalError("evaluate_return: overflow in pointwise path");
    }
  }
  return v;
}

RectangleFamily rectangle_family(const DerivedScales& s) { return RectangleFamily{s}; }

// ---------------------------------------------------------------------------
// Markov verification (outward-rounded log-domain interval checks)
// ---------------------------------------------------------------------------

MarkovCheck verify_markov_crossings(const AffineHorseshoeModel& model,
                                    const RectangleFamily& rects,
                                    std::uint64_t max_slices, std::uint64_t seed) {
  const ConstructionParams& p = model.params;
  const DerivedScales& s = rects.scales;
  const int d = p.d0;
  const int k = p.k;
  if (!p.translation.empty())
    for (double a : p.translation)
      if (a != 0.0)
        throw PreconditionError("verify_markov_crossings: nonzero translation not supported");

  // image half-widths delta'_i of one slice under the branch map
  std::vector<SignedLog> img(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    if (i == 0) {
      img[0] = nudge(model.branch_linear[0][static_cast<std::size_t>(k - 1)].abs() *
                         s.delta_sides[static_cast<std::size_t>(k - 1)],
                     +1);
    } else if (i == k) {
      // |z_{k+1}| over a slab: eta e^{n(l_{k+1}-l_1)} (1/8)(delta/L)
      img[static_cast<std::size_t>(k)] = nudge(
          model.branch_linear[static_cast<std::size_t>(k)][static_cast<std::size_t>(d - 1)]
                  .abs() *
              s.delta_sides[static_cast<std::size_t>(d - 1)] * SignedLog::from_double(0.125) /
              SignedLog::from_log(s.log_L),
          +1);
    } else {
      img[static_cast<std::size_t>(i)] = s.Lambda[static_cast<std::size_t>(i - 1)].abs() *
                                         s.delta_sides[static_cast<std::size_t>(i - 1)];
    }
  }

  MarkovCheck out;

  // V1: slot width == oscillation identity window: L * delta'_1 <= delta_1/8.
  {
    double lhs = s.log_L + img[0].lg;
    double rhs = s.delta.lg + std::log(0.125);
    out.slot_margin_log = rhs - lhs;
    if (!(lhs <= rhs))
      throw GeometricFailure(
          "delta'_1 = eta^{-1} e^{n(l_1-l_{k+1})} Lambda_k delta_k exceeds the delta/(8L) "
          "slot width (oscillation identity window violated)",
          rhs - lhs);
  }

  // stable containment for the pure-product coordinates 2..k
  for (int i = 1; i < k; ++i) {
    double margin =
        s.delta_sides[static_cast<std::size_t>(i)].lg - img[static_cast<std::size_t>(i)].lg;
    if (margin < -kLogSlack)
      throw GeometricFailure("image half-width in stable coordinate " + std::to_string(i + 1) +
                                 " exceeds delta_" + std::to_string(i + 1),
                             margin);
  }

  // full unstable length in the coordinates that are not the slab coordinate
  bool cover_others = true;
  for (int i = k; i <= d - 2; ++i) {
    double margin =
        img[static_cast<std::size_t>(i)].lg - s.delta_sides[static_cast<std::size_t>(i)].lg;
    if (margin < -kLogSlack) cover_others = false;
  }

  // slice set: full enumeration up to max_slices, otherwise the j-grid
  // endpoints plus seeded uniform draws
  std::vector<SliceRef> slices;
  const double neg_inf = -std::numeric_limits<double>::infinity();
  if (s.L_exact && *s.L_exact <= max_slices) {
    std::uint64_t L = *s.L_exact;
    for (std::uint64_t j = 0; j < L; ++j) {
      SliceRef r;
      r.j = static_cast<double>(j);
      r.log_j = j == 0 ? neg_inf : std::log(static_cast<double>(j));
      r.log_L_minus_j = std::log(static_cast<double>(L - j));
      slices.push_back(r);
    }
  } else if (s.L_exact) {
    out.sampled = true;
    Rng rng(seed);
    std::uint64_t L = *s.L_exact;
    std::set<std::uint64_t> js{0, L - 1};
    while (js.size() < max_slices) js.insert(rng.next_below(L));
    for (std::uint64_t j : js) {
      SliceRef r;
      r.j = static_cast<double>(j);
      r.log_j = j == 0 ? neg_inf : std::log(static_cast<double>(j));
      r.log_L_minus_j = std::log(static_cast<double>(L - j));
      slices.push_back(r);
    }
  } else {
    out.sampled = true;
    Rng rng(seed);
    std::set<double> fractions{0.0, 1.0 - 1e-15};  // grid endpoints as j/L
    while (fractions.size() < max_slices) fractions.insert(rng.next_double());
    for (double f : fractions) {
      SliceRef r;
      r.j = f;  // fraction of L; L itself is not representable
      r.log_j = f == 0.0 ? neg_inf : s.log_L + std::log(f);
      r.log_L_minus_j = s.log_L + std::log1p(-f);
      slices.push_back(r);
    }
  }

  const int nslices = static_cast<int>(slices.size());
  out.matrix.size = nslices;
  out.matrix.entries.assign(
      static_cast<std::size_t>(nslices) * static_cast<std::size_t>(nslices), 0);

  for (int a = 0; a < nslices; ++a) {
    const SliceRef& sa = slices[static_cast<std::size_t>(a)];
    // V4: j delta_1/L + delta'_1 <= delta_1  <=>  delta'_1 <= delta_1 (L-j)/L
    double room = s.delta.lg + sa.log_L_minus_j - s.log_L;
    if (!(img[0].lg <= room + kLogSlack))
      throw GeometricFailure("slice j=" + std::to_string(sa.j) +
                                 ": image leaves R in the stable coordinate "
                                 "(j delta/L + delta'_1 > delta)",
                             room - img[0].lg);
    if (!cover_others) continue;  // crossing deficit: row stays zero
    for (int b = 0; b < nslices; ++b) {
      // the target slab j' lives in coordinate d0; the image is centered there
      // (branch recentering), so covering requires (j'+1/8) delta_{d0}/L <= width
      const SliceRef& sb = slices[static_cast<std::size_t>(b)];
      const SignedLog& width = img[static_cast<std::size_t>(d - 1)];
      double slab_hi = s.delta_sides[static_cast<std::size_t>(d - 1)].lg - s.log_L +
                       ((sb.log_j == neg_inf) ? std::log(0.125)
                                              : sb.log_j + std::log1p(0.125 * std::exp(-sb.log_j)));
      if (slab_hi <= width.lg + kLogSlack) out.matrix.set(a, b, true);
    }
  }
  out.slices = std::move(slices);
  return out;
}

double model_entropy(const DerivedScales& s) {
  if (s.log_L < std::log(2.0) - 1e-15)
    throw PreconditionError("model_entropy: L must be >= 2");
  return s.entropy;
}

double conformal_hausdorff_dimension(double h, double lambda_s, double lambda_u) {
  if (h < 0) throw PreconditionError("conformal_hausdorff_dimension: h must be >= 0");
  if (!(lambda_s < 0.0) || !(lambda_u > 0.0))
    throw PreconditionError("conformal_hausdorff_dimension: need lambda_s < 0 < lambda_u");
  return h / std::fabs(lambda_s) + h / lambda_u;
}

PreparationTargets preparation_targets(const ExponentSpectrum& spec, int k) {
  const int d = spec.dim();
  if (k < 1 || k >= d) throw PreconditionError("preparation_targets: need 1 <= k < d0");
  auto rep = exponents::delta(spec);
  if (rep.delta_minus <= 0.0 || rep.delta_plus <= 0.0)
    throw PreconditionError("preparation_targets: orbit is not a saddle (Delta^+ or Delta^- is 0)");
  PreparationTargets t;
  t.stable_factor = std::exp(-rep.delta_minus / k);
  t.unstable_factor = std::exp(rep.delta_plus / (d - k));
  t.permutation = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) t.permutation((i + 1) % d, i) = 1.0;
  return t;
}

ContainmentReport iterate_containment(const AffineHorseshoeModel& model) {
  const ConstructionParams& p = model.params;
  const DerivedScales& s = model.scales;
  ContainmentReport rep;
  double log_rho = std::log(p.rho);
  for (int j = 0; j <= p.ell; ++j) {
    for (int i = 0; i < p.d0; ++i) {
      double side = p.lambda[static_cast<std::size_t>(i)] * j +
                    s.delta_sides[static_cast<std::size_t>(i)].lg;
      double bound = (i == p.d0 - 1) ? std::max(s.delta.lg, log_rho) : s.delta.lg;
      if (side > bound + kLogSlack) {
        rep.ok = false;
        std::ostringstream os;
        os << "iterate " << j << ", coordinate " << i + 1
           << ": half-side e^{lambda_i j} delta_i = exp(" << side << ") exceeds "
           << ((i == p.d0 - 1) ? "rho" : "delta");
        rep.first_violation = os.str();
        rep.log_margin = bound - side;
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace hsf::horseshoe
