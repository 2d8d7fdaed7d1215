#pragma once

// Hand-rolled random instance generators for the property tests. All draw
// from copeland::Rng so failures replay from the printed seed.

#include <cstdint>
#include <vector>

#include "copeland/constraints.hpp"
#include "copeland/preference_matrix.hpp"
#include "copeland/rng.hpp"

namespace gen {

using copeland::Rng;

// Every off-diagonal entry at least `min_gap` away from 1/2 and at most
// 0.45 away.
copeland::PreferenceMatrix strict_matrix(Rng& rng, int num_arms, double min_gap = 0.02);

// Strict matrix with at least two Copeland winners (rejection sampling).
copeland::PreferenceMatrix tied_winner_matrix(Rng& rng, int num_arms);

// Rates scattered around the 1/d scale, with exact multiples and zeros mixed
// in so that constraint sums land on and near 1.
copeland::RateVector rates_near_boundary(Rng& rng, const copeland::PreferenceMatrix& m);

struct Subproblem {
  std::vector<double> costs;
  int slack = 0;
};

// |S| in [1, max_size], costs uniform in [0, 10], slack in [0, |S| - 1].
Subproblem subproblem(Rng& rng, int max_size = 7);

int uniform_int(Rng& rng, int lo, int hi);  // inclusive
double uniform(Rng& rng, double lo, double hi);

}  // namespace gen
