#pragma once

#include <limits>
#include <vector>

namespace copeland {

// minimize   cost . x
// subject to row . x >= 1   for every row
//            0 <= x_j <= upper_j   (upper_j may be +inf)
// with cost >= 0 and nonnegative row coefficients.
struct CoveringLp {
  std::vector<double> cost;
  std::vector<std::vector<double>> rows;
  std::vector<double> upper;  // empty means every bound is +inf
};

struct LpSolution {
  std::vector<double> x;
  double value = 0.0;
  int pivots = 0;
};

inline constexpr double kPivotTolerance = 1e-11;

// Dense primal simplex with Bland's rule, run on the dual program
//   maximize sum(y) - upper . z   s.t.  rows^T y - z <= cost,  y, z >= 0,
// whose slack basis is feasible because cost >= 0. The primal vertex is
// read off the final reduced costs of the slack columns.
//
// Throws Error(kNumericalInstability) when only pivots below
// kPivotTolerance remain, and ValidationError when the covering program is
// infeasible (some row cannot reach 1 inside the bounds).
LpSolution simplex_solve(const CoveringLp& lp);

}  // namespace copeland
