#pragma once

#include <vector>

#include "copeland/constraints.hpp"
#include "copeland/preference_matrix.hpp"

namespace copeland {

// minimize sum c_j y_j  s.t.  every subset of size |costs| - slack has
// y-sum >= 1, y >= 0.
struct SubproblemInstance {
  std::vector<double> costs;
  int slack = 0;
};

struct SubproblemSolution {
  std::vector<double> weights;  // y*, aligned with costs
  double objective = 0.0;
  int block = 0;                // h: number of cheapest elements at 1/(h-k)
};

// Optimal solutions spread 1/(h - k) over the h cheapest elements for some
// h > k; every h is tried and the smallest h wins ties. slack >= |costs|
// leaves no constraints and returns all zeros.
SubproblemSolution solve_subproblem(const SubproblemInstance& instance);

enum class Exactness { kLpExact, kEcwClosedForm };

struct OptimalExploration {
  Arm winner = 0;
  RateVector rates;
  double constant = 0.0;  // sum r(i,j) q_ij over the stored rates
  Exactness exactness = Exactness::kEcwClosedForm;
};

inline constexpr int kDefaultMaxArms = 8;

struct SolverOptions {
  int max_arms = kDefaultMaxArms;  // K_max for the exponential LP
};

// Closed-form optimum of the efficient program for one winner candidate.
// Polynomial in K. Throws Error(kNotAWinner).
OptimalExploration ecw_optimal(const PreferenceMatrix& matrix, Arm winner);

// Exact LP optimum over the fully enumerated constraint family.
// Throws Error(kNotAWinner) and Error(kTooLarge) when K > max_arms.
OptimalExploration lp_cw_optimal(const PreferenceMatrix& matrix, Arm winner,
                                 const SolverOptions& options = {});

struct WinnerConstant {
  double constant = 0.0;
  Arm winner = 0;
};

// min over Copeland winners of the exact constant (ties: smallest arm).
// Strict gaps required.
WinnerConstant lower_bound(const PreferenceMatrix& matrix,
                           const SolverOptions& options = {});
// min over Copeland winners of the efficient constant.
WinnerConstant ecw_best(const PreferenceMatrix& matrix);
double ecw_constant(const PreferenceMatrix& matrix);

// 2K(C + L_(1) + 1) / Delta^2 with Delta the smallest gap.
double ccb_bound(const PreferenceMatrix& matrix);
// Feasible-point upper bound on the efficient constant of `winner`.
double ecw_explicit_bound(const PreferenceMatrix& matrix, Arm winner);
// C-independent bound: K/d(1/2 + Delta, 1/2) ((L_(1) + 3)/2 + L_(1)^2 / K).
double ecw_worstcase_bound(const PreferenceMatrix& matrix);

// Sum of r(i,j) q_ij using the matrix's Copeland losses (ties tolerated).
double regret_rate(const CopelandSummary& summary, const RateVector& rates);

}  // namespace copeland
