#include <doctest.h>

#include <cmath>

#include "copeland/datasets.hpp"
#include "copeland/divergence.hpp"
#include "copeland/errors.hpp"
#include "copeland/simplex.hpp"
#include "copeland/solvers.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace copeland;

namespace {

PreferenceMatrix two_arms() { return PreferenceMatrix::from_dense({{0.5, 0.6}, {0.4, 0.5}}); }

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("subproblem examples") {
  auto a = solve_subproblem({{2, 5}, 0});
  CHECK(a.weights == std::vector<double>{1, 0});
  CHECK(a.objective == 2.0);

  auto b = solve_subproblem({{1, 1, 3}, 1});
  CHECK(b.weights == std::vector<double>{1, 1, 0});
  CHECK(b.objective == 2.0);
  CHECK(b.block == 2);

  auto c = solve_subproblem({{1, 2, 3, 4}, 2});
  CHECK(c.weights == std::vector<double>{0.5, 0.5, 0.5, 0.5});
  CHECK(c.objective == 5.0);

  auto d = solve_subproblem({{4, 1}, 2});
  CHECK(d.weights == std::vector<double>{0, 0});
  CHECK(d.objective == 0.0);

  // Unsorted input keeps the caller's order.
  auto e = solve_subproblem({{3, 1, 1}, 1});
  CHECK(e.weights == std::vector<double>{0, 1, 1});
}

TEST_CASE("simplex examples") {
  CoveringLp lp{{2.0}, {{1.0}}, {3.0}};
  auto s = simplex_solve(lp);
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.value == doctest::Approx(2.0));

  CHECK(oracle::subproblem_lp_value({1, 1, 3}, 1) == doctest::Approx(2.0));

  CoveringLp impossible{{1.0}, {{1.0}}, {0.5}};
  CHECK_THROWS_AS(simplex_solve(impossible), ValidationError);
  CoveringLp negative{{-1.0}, {{1.0}}, {}};
  CHECK_THROWS_AS(simplex_solve(negative), ValidationError);
}

TEST_CASE("property: subproblem closed form equals the enumerated LP") {
  Rng rng(1234);
  for (int n = 0; n < 500; ++n) {
    const auto inst = gen::subproblem(rng);
    CAPTURE(n);
    const auto sol = solve_subproblem({inst.costs, inst.slack});
    const double lp = oracle::subproblem_lp_value(inst.costs, inst.slack);
    CHECK(rel_diff(sol.objective, lp) <= 1e-7);
    // y* covers every subset of size n - k: the n - k smallest weights sum to >= 1.
    std::vector<double> w = sol.weights;
    std::sort(w.begin(), w.end());
    double low = 0.0;
    for (std::size_t j = 0; j < inst.costs.size() - inst.slack; ++j) low += w[j];
    CHECK(low >= 1.0 - 1e-12);
  }
}

TEST_CASE("ecw optimum on cyclic") {
  const auto m = builtin_dataset("cyclic");
  const auto opt = ecw_optimal(m, 0);
  CHECK(opt.exactness == Exactness::kEcwClosedForm);
  for (Pair p : distinct_pairs(4)) {
    if (p.lo == 0) {
      CHECK(std::abs(opt.rates[p] - 49.6635) < 1e-3);
    } else {
      CHECK(opt.rates[p] == 0.0);
    }
  }
  CHECK(std::abs(opt.constant - 49.66) < 0.05);
  CHECK(std::abs(ecw_constant(m) - 49.66) < 0.05);
  CHECK(check_feasible(ecw_constraints(m, 0), opt.rates));
  // Every rival loses to >= 2 arms: the pins alone give the constant.
  double pins = 0.0;
  const auto s = copeland_summary(m);
  for (Arm j : s.inferiors[0]) pins += s.regret(0, j) / kl_from_half(m(0, j));
  CHECK(opt.constant == doctest::Approx(pins));
}

TEST_CASE("exact LP on cyclic") {
  const auto m = builtin_dataset("cyclic");
  const auto opt = lp_cw_optimal(m, 0);
  CHECK(opt.exactness == Exactness::kLpExact);
  CHECK(std::abs(opt.constant - 27.55) < 0.2);
  CHECK(check_feasible(cw_constraints(m, 0), opt.rates));
  // The half-rate solution has the same objective.
  RateVector half(4);
  for (Pair p : distinct_pairs(4)) half[p] = 1.0 / (2.0 * kl_from_half(m(p.hi, p.lo)));
  CHECK(regret_rate(copeland_summary(m), half) == doctest::Approx(opt.constant).epsilon(1e-9));
  CHECK(rel_diff(oracle::exact_lp_value(m, 0), opt.constant) <= 1e-6);

  const auto lb = lower_bound(m);
  CHECK(lb.winner == 0);
  CHECK(lb.constant == doctest::Approx(opt.constant));
}

TEST_CASE("two arms") {
  const auto m = two_arms();
  const double expected = 0.5 / kl_from_half(0.6);
  CHECK(std::abs(ecw_optimal(m, 0).constant - 24.83) < 0.05);
  CHECK(ecw_optimal(m, 0).rates[Pair::of(0, 1)] == doctest::Approx(1.0 / kl_from_half(0.6)));
  CHECK(std::abs(lp_cw_optimal(m, 0).constant - 24.83) < 0.05);
  CHECK(lower_bound(m).constant == doctest::Approx(expected));
  CHECK(ccb_bound(m) == doctest::Approx(800.0));
  CHECK(std::abs(ecw_explicit_bound(m, 0) - 74.5) < 0.2);
}

TEST_CASE("closed-form bounds") {
  const auto cyc = builtin_dataset("cyclic");
  CHECK(std::abs(ccb_bound(cyc) - 1600.0) <= 1e-12 * 1600.0);
  CHECK(std::abs(ecw_explicit_bound(cyc, 0) - 248.3) < 0.5);
  CHECK(std::abs(ecw_worstcase_bound(cyc) - 298.0) < 0.5);

  const auto gap = builtin_dataset("gap");
  CHECK(ecw_worstcase_bound(gap) ==
        doctest::Approx(5.0 / oracle::kl(0.51, 0.5) * 2.2).epsilon(1e-9));
  CHECK(oracle::kl(0.51, 0.5) == doctest::Approx(2.0001e-4).epsilon(1e-4));

  const auto extreme = PreferenceMatrix::from_dense({{0.5, 1.0}, {0.0, 0.5}});
  CHECK(ccb_bound(extreme) == doctest::Approx(32.0));
}

TEST_CASE("size gate") {
  const auto sushi = builtin_dataset("sushi");
  try {
    lower_bound(sushi);
    FAIL("no size gate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kTooLarge);
  }
  // The closed form has no size limit.
  CHECK(ecw_constant(sushi) > 0.0);
}

TEST_CASE("multisol: both constants agree for every winner") {
  const auto m = builtin_dataset("multisol");
  for (Arm w : {0, 1, 2}) {
    const double lambda = lp_cw_optimal(m, w).constant;
    const double tilde = ecw_optimal(m, w).constant;
    CAPTURE(w);
    CHECK(std::abs(tilde - lambda) <= 1e-6 * lambda);
  }
  CHECK(std::abs(ecw_constant(m) - lower_bound(m).constant) <= 1e-6 * ecw_constant(m));
}

TEST_CASE("property: efficient constant dominates the exact one") {
  Rng rng(31337);
  for (int n = 0; n < 200; ++n) {
    const int k = gen::uniform_int(rng, 3, 5);
    const auto m = gen::strict_matrix(rng, k);
    for (Arm w : copeland_summary(m).winners) {
      CAPTURE(n);
      const auto exact = lp_cw_optimal(m, w);
      const auto relaxed = ecw_optimal(m, w);
      CHECK(relaxed.constant >= exact.constant - 1e-9);
      CHECK(check_feasible(cw_constraints(m, w), exact.rates));
      CHECK(check_feasible(ecw_constraints(m, w), relaxed.rates));
      CHECK(relaxed.constant == doctest::Approx(oracle::regret_rate(m, relaxed.rates)));
      CHECK(rel_diff(exact.constant, oracle::exact_lp_value(m, w)) <= 1e-7);
      for (Pair p : distinct_pairs(k)) {
        CHECK(exact.rates[p] <= 1.0 / kl_from_half(m(p.hi, p.lo)) * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("property: equality with several winners") {
  Rng rng(8080);
  for (int n = 0; n < 20; ++n) {
    const int k = gen::uniform_int(rng, 3, 5);
    const auto m = gen::tied_winner_matrix(rng, k);
    for (Arm w : copeland_summary(m).winners) {
      const double lambda = lp_cw_optimal(m, w).constant;
      const double tilde = ecw_optimal(m, w).constant;
      CAPTURE(n);
      CHECK(std::abs(tilde - lambda) <= 1e-6 * lambda);
    }
  }
}

TEST_CASE("property: bound chain") {
  Rng rng(2718);
  for (int n = 0; n < 200; ++n) {
    const int k = gen::uniform_int(rng, 2, 6);
    const auto m = gen::strict_matrix(rng, k);
    const auto best = ecw_best(m);
    CAPTURE(n);
    for (Arm w : copeland_summary(m).winners) {
      CHECK(ecw_explicit_bound(m, w) >= ecw_optimal(m, w).constant - 1e-9);
    }
    CHECK(ecw_worstcase_bound(m) >= ecw_explicit_bound(m, best.winner) - 1e-9);
  }
}
