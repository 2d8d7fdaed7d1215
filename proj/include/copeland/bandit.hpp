#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "copeland/preference_matrix.hpp"
#include "copeland/rng.hpp"
#include "copeland/solvers.hpp"

namespace copeland {

enum class Variant { kCw, kEcw, kRandom };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);  // "cw" | "ecw" | "random"

struct AlgorithmConfig {
  double alpha = 3.0;  // forced draws while N_ij < alpha sqrt(ln t)
  double beta = 0.01;  // near-tie guard |mu_hat - 1/2| < beta / ln ln t
  Variant variant = Variant::kEcw;
  std::uint64_t seed = 0;
  int max_arms = kDefaultMaxArms;  // K_max for the cw variant's exact LP

  void validate() const;  // throws ValidationError
};

// Rounds up to and including this one treat the near-tie threshold as
// infinite: ceil(e^e) = 16, where ln ln t first exceeds 1.
inline constexpr std::int64_t kNearTieWarmup = 16;

enum class Phase { kGuard, kLoop };

// Mutable state of the list-driven RMED planner.
class RmedState {
 public:
  RmedState() = default;
  explicit RmedState(int num_arms);

  // Starts from given win counts (wins[i][j] = times i beat j) at round t,
  // positioned at a loop boundary whose current list is `current`.
  static RmedState restore(const std::vector<std::vector<std::int64_t>>& wins,
                           std::int64_t round, std::vector<Pair> current);

  int num_arms() const { return num_arms_; }
  std::int64_t round() const { return round_; }
  std::int64_t count(Pair p) const;  // N_ij, or self-draws for (i, i)
  std::int64_t wins(Arm winner, Arm loser) const {
    return wins_[static_cast<std::size_t>(winner) * num_arms_ + loser];
  }
  // wins / count with 0/0 = 1/2.
  double empirical(Arm i, Arm j) const;
  PreferenceMatrix empirical_matrix() const;

  const std::vector<Pair>& current_list() const { return current_; }
  const std::set<Pair>& remaining() const { return remaining_; }
  const std::set<Pair>& next_list() const { return next_; }
  std::size_t cursor() const { return cursor_; }
  bool in_guard_sweep() const { return guard_pos_.has_value(); }
  std::optional<Arm> candidate() const { return candidate_; }
  // Pairs planned by the latest planning event (last L_NC).
  const std::vector<Pair>& last_plan() const { return last_plan_; }

 private:
  friend struct RmedStepper;

  int num_arms_ = 0;
  std::int64_t round_ = 1;
  std::vector<std::int64_t> counts_;       // by pair_index
  std::vector<std::int64_t> self_counts_;  // per arm
  std::vector<std::int64_t> wins_;         // K x K, row beats column

  std::vector<Pair> current_;  // L_C in draw order
  std::set<Pair> remaining_;   // L_R
  std::set<Pair> next_;        // L_N
  std::size_t cursor_ = 0;
  // Next distinct-pair index to examine in the guard sweep that opens every
  // pass; empty once the sweep is finished and the loop is running.
  std::optional<std::size_t> guard_pos_ = 0;
  std::optional<Arm> candidate_;
  std::vector<Pair> last_plan_;
};

// Guard predicate for pair p at the state's current round.
bool needs_forced_draw(const RmedState& state, const AlgorithmConfig& config, Pair p);

// Next pair to draw. Guard phase: the next distinct pair in lexicographic
// order (at or after the sweep position) that fails either guard. Loop
// phase: the entry of the current list at the cursor.
Pair select_pair(const RmedState& state, const AlgorithmConfig& config);
Phase next_phase(const RmedState& state, const AlgorithmConfig& config);

// Consumes the feedback for `pair` (outcome true means pair.hi won; ignored
// for self-pairs) and runs the planning step when the draw came from the
// loop. Throws Error(kInternalInconsistency) when `pair` is not what
// select_pair would return.
void update_and_plan(RmedState& state, const AlgorithmConfig& config, Pair pair,
                     std::optional<bool> outcome);

// Uniform over the K(K-1)/2 distinct pairs. K >= 2.
Pair random_baseline_select(Rng& rng, int num_arms);

// Drives one of the three variants; the harness talks only to this.
class Duelist {
 public:
  // Throws Error(kTooLarge) for the cw variant when K > config.max_arms.
  Duelist(int num_arms, const AlgorithmConfig& config);

  Pair select(Rng& rng);
  void observe(Pair pair, std::optional<bool> outcome);
  const RmedState& state() const { return state_; }
  const AlgorithmConfig& config() const { return config_; }

 private:
  AlgorithmConfig config_;
  RmedState state_;
};

}  // namespace copeland
