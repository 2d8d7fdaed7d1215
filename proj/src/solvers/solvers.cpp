#include "copeland/solvers.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <sstream>

#include "copeland/divergence.hpp"
#include "copeland/errors.hpp"
#include "copeland/simplex.hpp"

namespace copeland {

SubproblemSolution solve_subproblem(const SubproblemInstance& instance) {
  const int n = static_cast<int>(instance.costs.size());
  const int k = instance.slack;
  if (k < 0) throw ValidationError("subproblem slack must be nonnegative");
  SubproblemSolution out;
  out.weights.assign(n, 0.0);
  if (k >= n) return out;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.costs[a] < instance.costs[b];
  });

  double prefix = 0.0;
  for (int h = 1; h <= n; ++h) {
    prefix += instance.costs[order[h - 1]];
    if (h <= k) continue;
    const double candidate = prefix / (h - k);
    if (out.block == 0 || candidate < out.objective) {
      out.block = h;
      out.objective = candidate;
    }
  }
  for (int i = 0; i < out.block; ++i) {
    out.weights[order[i]] = 1.0 / (out.block - k);
  }
  return out;
}

double regret_rate(const CopelandSummary& summary, const RateVector& rates) {
  double total = 0.0;
  for (Pair p : distinct_pairs(summary.num_arms)) {
    total += summary.regret(p.hi, p.lo) * rates[p];
  }
  return total;
}

OptimalExploration ecw_optimal(const PreferenceMatrix& matrix, Arm winner) {
  const ConstraintFamily family = ConstraintFamily::efficient(matrix, winner);
  const CopelandSummary& s = family.summary();
  const int k = matrix.size();

  OptimalExploration out;
  out.winner = winner;
  out.exactness = Exactness::kEcwClosedForm;
  out.rates = RateVector(k);
  auto assign = [&](Pair p, double rate) {
    // Pins touch (winner, .) and the subproblem for a rival only touches
    // (., rival) with both ends different from the winner, so no pair is
    // ever written twice.
    assert(out.rates[p] == 0.0);
    out.rates[p] = std::max(out.rates[p], rate);
  };

  for (Pair p : family.pins()) assign(p, 1.0 / family.divergence(p));

  for (Arm rival = 0; rival < k; ++rival) {
    if (rival == winner) continue;
    std::vector<Arm> pool;
    for (Arm j : s.superiors[rival]) {
      if (j != winner) pool.push_back(j);
    }
    const int need = s.losses[rival] - s.losses[winner] + 1;
    if (need > static_cast<int>(pool.size())) continue;

    SubproblemInstance sub;
    sub.slack = static_cast<int>(pool.size()) - need;
    for (Arm j : pool) {
      sub.costs.push_back(s.regret(j, rival) / family.divergence(Pair::of(j, rival)));
    }
    const SubproblemSolution sol = solve_subproblem(sub);
    for (std::size_t idx = 0; idx < pool.size(); ++idx) {
      if (sol.weights[idx] == 0.0) continue;
      const Pair p = Pair::of(pool[idx], rival);
      assign(p, sol.weights[idx] / family.divergence(p));
    }
  }
  out.constant = regret_rate(s, out.rates);
  return out;
}

OptimalExploration lp_cw_optimal(const PreferenceMatrix& matrix, Arm winner,
                                 const SolverOptions& options) {
  const int k = matrix.size();
  if (k > options.max_arms) {
    std::ostringstream msg;
    msg << "exact program needs K <= " << options.max_arms << ", got K = " << k;
    throw Error(ErrorKind::kTooLarge, msg.str());
  }
  const ConstraintFamily family = ConstraintFamily::exact(matrix, winner);
  const CopelandSummary& s = family.summary();
  const auto pairs = distinct_pairs(k);

  CoveringLp lp;
  lp.cost.reserve(pairs.size());
  lp.upper.reserve(pairs.size());
  for (Pair p : pairs) {
    lp.cost.push_back(s.regret(p.hi, p.lo));
    const double d = family.divergence(p);
    lp.upper.push_back(d > 0.0 ? 1.0 / d : std::numeric_limits<double>::infinity());
  }
  family.for_each_descriptor([&](const Descriptor& d) {
    std::vector<double> row(pairs.size(), 0.0);
    for (Pair p : family.pair_set(d)) row[pair_index(p)] += family.divergence(p);
    lp.rows.push_back(std::move(row));
    return true;
  });

  OptimalExploration out;
  out.winner = winner;
  out.exactness = Exactness::kLpExact;
  out.rates = RateVector(k);
  if (!lp.rows.empty()) {
    const LpSolution sol = simplex_solve(lp);
    std::copy(sol.x.begin(), sol.x.end(), out.rates.values().begin());
  }
  out.constant = regret_rate(s, out.rates);
  return out;
}

WinnerConstant lower_bound(const PreferenceMatrix& matrix,
                           const SolverOptions& options) {
  const CopelandSummary s = copeland_summary(matrix, TieMode::kStrict);
  WinnerConstant best{std::numeric_limits<double>::infinity(), s.winners.front()};
  for (Arm w : s.winners) {
    const double c = lp_cw_optimal(matrix, w, options).constant;
    if (c < best.constant) best = {c, w};
  }
  return best;
}

WinnerConstant ecw_best(const PreferenceMatrix& matrix) {
  const CopelandSummary s = copeland_summary(matrix, TieMode::kStrict);
  WinnerConstant best{std::numeric_limits<double>::infinity(), s.winners.front()};
  for (Arm w : s.winners) {
    const double c = ecw_optimal(matrix, w).constant;
    if (c < best.constant) best = {c, w};
  }
  return best;
}

double ecw_constant(const PreferenceMatrix& matrix) {
  return ecw_best(matrix).constant;
}

namespace {

double smallest_gap_divergence(const PreferenceMatrix& matrix) {
  return kl_from_half(0.5 + matrix.min_gap());
}

}  // namespace

double ccb_bound(const PreferenceMatrix& matrix) {
  const CopelandSummary s = copeland_summary(matrix, TieMode::kStrict);
  const double k = matrix.size();
  const double gap = matrix.min_gap();
  return 2.0 * k * (s.winner_count() + s.min_loss() + 1) / (gap * gap);
}

double ecw_explicit_bound(const PreferenceMatrix& matrix, Arm winner) {
  const CopelandSummary s = copeland_summary(matrix, TieMode::kStrict);
  if (!s.is_winner(winner)) {
    throw Error(ErrorKind::kNotAWinner, "ecw_explicit_bound needs a Copeland winner");
  }
  double sum = 0.0;
  for (Arm rival = 0; rival < matrix.size(); ++rival) {
    if (rival == winner) continue;
    const double l = s.losses[rival];
    sum += 1.0 + l / (l - s.min_loss() + 1.0);
  }
  return sum / smallest_gap_divergence(matrix);
}

double ecw_worstcase_bound(const PreferenceMatrix& matrix) {
  const CopelandSummary s = copeland_summary(matrix, TieMode::kStrict);
  const double k = matrix.size();
  const double l1 = s.min_loss();
  return k / smallest_gap_divergence(matrix) * ((l1 + 3.0) / 2.0 + l1 * l1 / k);
}

}  // namespace copeland
