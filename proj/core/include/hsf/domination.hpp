#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hsf/types.hpp"

namespace hsf::domination {

// Invariant splitting E + F along the orbit; index = dim E (least expanded).
struct CandidateSplitting {
  int index = 0;
  std::vector<Matrix> basis_E;  // one d x index orthonormal basis per orbit point
  std::vector<Matrix> basis_F;  // one d x (d-index) basis per orbit point
  double invariance_residual = 0.0;
};

// Cuts that could not be resolved (modulus clusters closer than rel. 1e-6).
struct SplittingScan {
  std::vector<CandidateSplitting> candidates;
  std::vector<int> unresolvable_cuts;  // indices i where the cut was omitted
};

struct DominationReport {
  int index = 0;
  std::optional<int> smallest_N;     // set only when certified for all n >= smallest_N
  int horizon = 0;
  std::map<int, double> worst_ratio;  // n -> max over base points and unit u,v
  double period_ratio = 0.0;          // worst_ratio at n = period (certification factor)
  bool certified = false;
};

inline constexpr double kClusterRelTol = 1e-6;

SplittingScan invariant_splittings(const PeriodicCocycle& c);

// worstRatio(n) = max_x ||Df^n|E(x)|| / min-singular(Df^n|F(x)) for
// 1 <= n <= horizon, in the log domain with per-step QR reorthogonalization.
// smallest_N is certified for all larger n when the ratio contracts strictly
// over one full period (submultiplicativity of restricted norms).
DominationReport check_N_domination(const PeriodicCocycle& c, const CandidateSplitting& s,
                                    int N, int horizon);

// indices whose candidate splitting is N-dominated for some N <= Nmax
std::vector<std::pair<int, int>> finest_dominated_splitting(const PeriodicCocycle& c, int Nmax);

// period >= T and no N-dominated splitting at any index
bool tn_weak(const PeriodicCocycle& c, int T, int N);

}  // namespace hsf::domination
