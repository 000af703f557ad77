#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsf/signed_log.hpp"
#include "hsf/symbolic.hpp"
#include "hsf/types.hpp"

namespace hsf::horseshoe {

// Inputs of the construction around a prepared orbit: homothety exponents
// lambda (stable block constant, unstable block constant), tangency transfer
// expansions mu, oscillation size eta, support size rho, block lengths
// n, ell, m, and the bound C >= max(|mu_i|, |mu_i|^-1).
struct ConstructionParams {
  int d0 = 0;
  int k = 0;
  std::vector<double> lambda;
  std::vector<double> mu;
  double eta = 0.0;
  double rho = 0.0;
  double C = 1.0;
  int n = 0;
  int ell = 0;
  int m = 0;
  std::vector<double> translation;  // a_1..a_d0; defaults to zero

  void validate() const;
  bool zero_sum_lambda(double tol = 1e-9) const;
  bool unit_mu_product(double tol = 1e-9) const;
};

// Log-domain scales of the rectangle R and the choice of L.
struct DerivedScales {
  std::vector<SignedLog> Lambda;       // Lambda_i = mu_i e^{(ell+n)l_i + n l_{i+1}}
  SignedLog delta;                     // delta = C^-1 e^{(l_1+l_d0) n} rho
  std::vector<SignedLog> delta_sides;  // delta_1..delta_d0 (all > 0)
  double log_L_bound = 0.0;            // strict upper bound for log L
  double log_L = 0.0;                  // log of the chosen L (= log(bound/2))
  std::optional<std::uint64_t> L_exact;  // present when L < 2^62
  int return_time = 0;                 // ell + m + 2n
  double entropy = 0.0;                // log L / return_time
};

// theta = 1/2: L = floor(bound/2), keeping strict inequality with margin.
DerivedScales derive_scales(const ConstructionParams& p);

// C^1 piecewise-cubic bump train: identity on |x-j| <= 1/4, zero outside
// [-1/2, L-1/2], 1-periodic across the L windows. C^0/C^1 sizes do not
// depend on L.
class OscillationProfile {
 public:
  explicit OscillationProfile(double L);
  double operator()(double x) const;
  double derivative(double x) const;
  double L() const { return L_; }
  double max_abs() const;        // sup |Phi|
  double max_abs_derivative() const;  // sup |Phi'| (= 16/9, L-independent)

 private:
  double L_;
};

OscillationProfile oscillation_profile(double L);

struct AffinePiece {
  std::string label;                          // linear-block | shear-1 | tangency | oscillation | shear-2
  int steps = 1;                              // time steps accounted per application
  int repeat = 1;                             // linear blocks apply `repeat` times
  std::vector<std::vector<SignedLog>> linear; // d0 x d0
  std::vector<SignedLog> offset;              // translation (shear-2 carries a)
  bool is_oscillation = false;                // nonlinear piece; affine per branch
  double log_abs_det = 0.0;                   // per single application
};

struct AffineHorseshoeModel {
  ConstructionParams params;
  DerivedScales scales;
  std::vector<AffinePiece> pieces;  // ell steps, shear-1, n steps, m-step tangency,
                                    // oscillation, n steps, shear-2
  bool conservative = false;        // zero-sum lambda and |prod mu| = 1

  // Closed-form one-return branch map: z = M x + (j delta / L) u + a.
  std::vector<std::vector<SignedLog>> branch_linear;
  std::vector<SignedLog> branch_offset_unit;  // u

  // Pointwise evaluation of the return map (representable scales only).
  Vector evaluate_return(const Vector& x) const;
};

// Model coefficients follow the quoted shear/oscillation formulas; when
// eta_scale != 1 the shears are assembled with eta/eta_scale while the scales
// (and L) stay fixed, which is the stress knob used to violate the slot-width
// inequality.
AffineHorseshoeModel assemble_model(const ConstructionParams& p, const DerivedScales& s,
                                    double eta_scale = 1.0);

struct RectangleFamily {
  DerivedScales scales;
};

RectangleFamily rectangle_family(const DerivedScales& s);

struct SliceRef {
  double j = 0.0;            // slice index (exact when L is)
  double log_j = 0.0;        // log j (-inf for j = 0)
  double log_L_minus_j = 0.0;
};

struct MarkovCheck {
  symbolic::TransitionMatrix matrix;  // over the checked slices
  std::vector<SliceRef> slices;
  bool sampled = false;   // true when only a subset of the L slices was checked
  double slot_margin_log = 0.0;  // log[(delta/8L) / delta'_1]; positive = pass
};

// Interval verification (outward-rounded log arithmetic) that the return image
// of each checked slice crosses R fully in the unstable factor and lands inside
// R's stable factor. Containment violations raise GeometricFailure carrying the
// first violated inequality and its margin; pure crossing deficits only zero
// matrix entries. `max_slices` caps enumeration (sampled above it, seeded).
MarkovCheck verify_markov_crossings(const AffineHorseshoeModel& model,
                                    const RectangleFamily& rects,
                                    std::uint64_t max_slices = (1ULL << 16),
                                    std::uint64_t seed = 1);

double model_entropy(const DerivedScales& s);

// d^s + d^u = h/|lambda_s| + h/lambda_u for a conformal horseshoe.
double conformal_hausdorff_dimension(double h, double lambda_s, double lambda_u);

struct PreparationTargets {
  double stable_factor = 0.0;    // exp(-Delta^- / k) < 1
  double unstable_factor = 0.0;  // exp(Delta^+ / (d0-k)) > 1
  Matrix permutation;            // cyclic shift on coordinates
};

PreparationTargets preparation_targets(const ExponentSpectrum& spec, int k);

// The iterate-containment identity of the construction: for 0 <= j <= ell the
// j-th image of R has half-sides e^{lambda_i j} delta_i <= delta except the
// d0-th which stays <= rho.
struct ContainmentReport {
  bool ok = true;
  std::string first_violation;
  double log_margin = 0.0;
};
ContainmentReport iterate_containment(const AffineHorseshoeModel& model);

}  // namespace hsf::horseshoe
