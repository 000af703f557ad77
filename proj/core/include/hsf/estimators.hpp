#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsf/symbolic.hpp"
#include "hsf/systems.hpp"
#include "hsf/types.hpp"

namespace hsf::estimators {

// Sampled-orbit universe: the bridge from `systems` to the counting
// definitions. Distances are between k-th forward iterates of two samples.
class OrbitSamples {
 public:
  virtual ~OrbitSamples() = default;
  virtual std::size_t size() const = 0;
  virtual int horizon() const = 0;
  virtual double distance(std::size_t a, std::size_t b, int k) const = 0;

  // d(f^k a, f^k b) <= eps for all 0 <= k < n (condition (a) of the

  // two-scale counts; non-strict)
  virtual bool close_all(std::size_t a, std::size_t b, int n, double eps) const;
  // d(f^k a, f^k b) > delta for some 0 <= k < n (condition (b); strict)
  virtual bool separated(std::size_t a, std::size_t b, int n, double delta) const;

  // optional R^d embedding of iterates for spatial hashing
  virtual bool embeds() const { return false; }
  virtual int embed_dim() const { return 0; }
  virtual void embed(std::size_t /*a*/, int /*k*/, double* /*out*/) const {}
  virtual bool torus_geometry() const { return false; }

  // optional exact Bowen-class key (shift samples): samples with equal keys
  // are exactly the points of one (n, eps)-Bowen ball around any of them
  virtual std::optional<std::string> ball_class_key(std::size_t /*a*/, int /*n*/,
                                                    double /*eps*/) const {
    return std::nullopt;
  }
};

std::unique_ptr<OrbitSamples> torus_grid_samples(const systems::SystemSpec& s, int per_axis);
std::unique_ptr<OrbitSamples> torus_random_samples(const systems::SystemSpec& s,
                                                   std::size_t count, std::uint64_t seed);
// exhaustive admissible words; the window is long enough that iterates up to
// nmax never probe the identical padding tails
std::unique_ptr<OrbitSamples> shift_word_samples_exhaustive(const symbolic::TransitionMatrix& t,
                                                            int nmax);
// seeded i.i.d. symbol words (full shift with per-symbol weights), for the
// Katok counting experiments
std::unique_ptr<OrbitSamples> shift_word_samples_random(int alphabet, std::size_t count,
                                                        int nmax,
                                                        const std::vector<double>& weights,
                                                        std::uint64_t seed);

// Record of one greedy two-scale count s(n, delta, eps). Greedy maximal
// families are lower bounds for the true maximum.
struct ScaleCount {
  int n = 0;
  double eps = 0.0;    // +inf encodes the vacuous closeness condition
  double delta = 0.0;
  std::size_t count = 0;
  bool saturated = false;   // count reached half the sample budget; unreliable
  bool empty_samples = false;
  std::uint64_t seed = 0;
};

ScaleCount max_separated_set(const OrbitSamples& samples, int n, double delta, double eps,
                             std::uint64_t seed);

struct SlopeFit {
  double slope = 0.0;
  double residual = 0.0;  // rms of the LSQ fit
  int fit_lo = 0, fit_hi = 0;
};

// least-squares slope of y over x (natural logs of counts vs n)
SlopeFit least_squares_slope(const std::vector<int>& n, const std::vector<double>& logy);

struct EntropyEstimate {
  double eps = 0.0;
  SlopeFit fit;
  std::vector<ScaleCount> counts;
};

struct TopologicalEntropyResult {
  std::vector<EntropyEstimate> per_eps;   // in the given eps order
  bool monotone_violation = false;        // slopes should not drop as eps decreases
};

// (n, eps)-separated growth per scale; the fit runs over the top half of the
// usable (unsaturated) range and needs at least 3 points.
TopologicalEntropyResult topological_entropy_estimate(const OrbitSamples& samples,
                                                      std::vector<double> eps_scales, int nmax,
                                                      std::uint64_t seed);

struct TailEntropyRow {
  double eps = 0.0, delta = 0.0;
  SlopeFit fit;
  std::vector<ScaleCount> counts;
};

struct TailEntropyTable {
  std::vector<TailEntropyRow> rows;
  double diagonal_estimate = 0.0;  // smallest eps, smallest delta
};

TailEntropyTable tail_entropy_estimate(const OrbitSamples& samples, std::vector<double> eps_list,
                                       std::vector<double> delta_list, int nmax,
                                       std::uint64_t seed);

struct KatokEstimate {
  SlopeFit fit;
  std::vector<std::pair<int, std::size_t>> cover_counts;  // (n, r(n))
};

// minimal number of (n, eps)-Bowen balls centered at samples covering half of
// them (greedy); growth-rate slope over the top half of the range
KatokEstimate katok_entropy_estimate(const OrbitSamples& samples, double eps, int nmax);

// Bowen ball membership (strict <) for point systems and shift points.
bool bowen_ball_contains(const systems::SystemSpec& s, const Vector& center,
                         const Vector& candidate, double eps, int N);
bool bowen_ball_contains(const symbolic::ShiftPoint& center, const symbolic::ShiftPoint& candidate,
                         double eps, int N);

// least-squares slope of log N(r) vs log(1/r); needs >= 1e3 points and >= 4
// scales spanning a decade
double box_counting_dimension(const std::vector<Vector>& cloud, std::vector<double> scales);

}  // namespace hsf::estimators
