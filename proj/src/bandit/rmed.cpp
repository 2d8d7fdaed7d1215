#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "copeland/bandit.hpp"
#include "copeland/constraints.hpp"
#include "copeland/copeland.hpp"
#include "copeland/errors.hpp"

namespace copeland {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kCw: return "cw";
    case Variant::kEcw: return "ecw";
    case Variant::kRandom: return "random";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  if (name == "cw") return Variant::kCw;
  if (name == "ecw") return Variant::kEcw;
  if (name == "random") return Variant::kRandom;
  throw ValidationError("unknown algorithm '" + std::string(name) +
                        "' (expected cw, ecw or random)");
}

void AlgorithmConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("alpha must be a positive finite number");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ValidationError("beta must be a nonnegative finite number");
  }
  if (max_arms < 1) throw ValidationError("K_max must be positive");
}

RmedState::RmedState(int num_arms)
    : num_arms_(num_arms),
      counts_(pair_count(num_arms), 0),
      self_counts_(num_arms, 0),
      wins_(static_cast<std::size_t>(num_arms) * num_arms, 0),
      current_(distinct_pairs(num_arms)),
      remaining_(current_.begin(), current_.end()) {}

RmedState RmedState::restore(const std::vector<std::vector<std::int64_t>>& wins,
                             std::int64_t round, std::vector<Pair> current) {
  const int k = static_cast<int>(wins.size());
  RmedState s(k);
  for (Arm i = 0; i < k; ++i) {
    if (static_cast<int>(wins[i].size()) != k) {
      throw ValidationError("win table must be square");
    }
    for (Arm j = 0; j < k; ++j) {
      if (i == j) continue;
      if (wins[i][j] < 0) throw ValidationError("win counts must be nonnegative");
      s.wins_[static_cast<std::size_t>(i) * k + j] = wins[i][j];
      if (i > j) s.counts_[pair_index({i, j})] = wins[i][j] + wins[j][i];
    }
  }
  if (round < 1) throw ValidationError("round must be >= 1");
  if (current.empty()) throw ValidationError("current list must not be empty");
  std::sort(current.begin(), current.end());
  current.erase(std::unique(current.begin(), current.end()), current.end());
  s.round_ = round;
  s.current_ = std::move(current);
  s.remaining_ = std::set<Pair>(s.current_.begin(), s.current_.end());
  return s;
}

std::int64_t RmedState::count(Pair p) const {
  return p.is_self() ? self_counts_[p.hi] : counts_[pair_index(p)];
}

double RmedState::empirical(Arm i, Arm j) const {
  if (i == j) return 0.5;
  const std::int64_t n = count(Pair::of(i, j));
  if (n == 0) return 0.5;
  return static_cast<double>(wins(i, j)) / static_cast<double>(n);
}

PreferenceMatrix RmedState::empirical_matrix() const {
  std::vector<double> lower(pair_count(num_arms_));
  for (Pair p : distinct_pairs(num_arms_)) lower[pair_index(p)] = empirical(p.hi, p.lo);
  MatrixOptions opts;
  opts.tie_tolerant = true;
  return PreferenceMatrix::from_lower(num_arms_, std::move(lower), opts);
}

bool needs_forced_draw(const RmedState& state, const AlgorithmConfig& config, Pair p) {
  const double t = static_cast<double>(state.round());
  const double n = static_cast<double>(state.count(p));
  if (n < config.alpha * std::sqrt(std::log(std::max(t, 1.0)))) return true;
  if (config.beta <= 0.0) return false;
  if (state.round() <= kNearTieWarmup) return true;
  const double gap = std::abs(state.empirical(p.hi, p.lo) - 0.5);
  return gap < config.beta / std::log(std::log(t));
}

namespace {

struct Action {
  Phase phase;
  Pair pair;
  std::size_t guard_index = 0;
};

}  // namespace

// Internal transitions of RmedState; kept out of the public surface.
struct RmedStepper {
  static Action next(const RmedState& s, const AlgorithmConfig& config) {
    if (s.guard_pos_) {
      const auto pairs = distinct_pairs(s.num_arms_);
      for (std::size_t idx = *s.guard_pos_; idx < pairs.size(); ++idx) {
        if (needs_forced_draw(s, config, pairs[idx])) {
          return {Phase::kGuard, pairs[idx], idx};
        }
      }
    }
    if (s.cursor_ >= s.current_.size()) {
      throw Error(ErrorKind::kInternalInconsistency, "draw list is empty");
    }
    return {Phase::kLoop, s.current_[s.cursor_], 0};
  }

  static void record(RmedState& s, Pair pair, std::optional<bool> outcome) {
    if (pair.is_self()) {
      ++s.self_counts_[pair.hi];
      return;
    }
    if (!outcome) {
      throw Error(ErrorKind::kInternalInconsistency,
                  "a distinct pair was drawn without feedback");
    }
    ++s.counts_[pair_index(pair)];
    const Arm winner = *outcome ? pair.hi : pair.lo;
    const Arm loser = *outcome ? pair.lo : pair.hi;
    ++s.wins_[static_cast<std::size_t>(winner) * s.num_arms_ + loser];
  }

  // One planning event: returns L_NC for the pair just drawn.
  static std::vector<Pair> plan(RmedState& s, const AlgorithmConfig& config) {
    const double log_t = std::log(std::max(static_cast<double>(s.round_), 2.0));
    const PreferenceMatrix empirical = s.empirical_matrix();
    const CopelandSummary summary = copeland_summary(empirical, TieMode::kTolerant);
    if (summary.winners.empty()) {
      throw Error(ErrorKind::kInternalInconsistency, "no empirical Copeland winner");
    }

    RateVector normalized(s.num_arms_);
    for (Pair p : distinct_pairs(s.num_arms_)) {
      normalized[p] = static_cast<double>(s.count(p)) / log_t;
    }

    const bool exact = config.variant == Variant::kCw;
    for (Arm w : summary.winners) {
      const ConstraintFamily family = exact ? ConstraintFamily::exact(empirical, w)
                                            : ConstraintFamily::efficient(empirical, w);
      if (check_feasible(family, normalized)) {
        s.candidate_ = w;
        return {Pair{w, w}};
      }
    }

    std::optional<OptimalExploration> best;
    for (Arm w : summary.winners) {
      OptimalExploration opt =
          exact ? lp_cw_optimal(empirical, w, SolverOptions{config.max_arms})
                : ecw_optimal(empirical, w);
      if (!best || opt.constant < best->constant) best = std::move(opt);
    }
    std::vector<Pair> planned;
    for (Pair p : distinct_pairs(s.num_arms_)) {
      if (best->rates[p] > normalized[p]) planned.push_back(p);
    }
    planned.push_back(Pair{best->winner, best->winner});
    s.candidate_ = best->winner;
    return planned;
  }

  static void update(RmedState& s, const AlgorithmConfig& config, Pair pair,
                     std::optional<bool> outcome) {
    if (config.variant == Variant::kRandom) {
      record(s, pair, outcome);
      ++s.round_;
      return;
    }
    const Action action = next(s, config);
    if (action.pair != pair) {
      std::ostringstream msg;
      msg << "pair " << pair_key(pair) << " was not the planned draw "
          << pair_key(action.pair);
      throw Error(ErrorKind::kInternalInconsistency, msg.str());
    }
    record(s, pair, outcome);

    if (action.phase == Phase::kGuard) {
      s.guard_pos_ = action.guard_index + 1;
      ++s.round_;
      return;
    }

    s.guard_pos_.reset();
    s.last_plan_ = plan(s, config);
    s.remaining_.erase(pair);
    for (Pair p : s.last_plan_) {
      if (!s.remaining_.contains(p)) s.next_.insert(p);
    }
    ++s.round_;
    if (++s.cursor_ == s.current_.size()) {
      s.current_.assign(s.next_.begin(), s.next_.end());
      s.remaining_ = std::move(s.next_);
      s.next_.clear();
      s.cursor_ = 0;
      s.guard_pos_ = 0;
    }
  }
};

Phase next_phase(const RmedState& state, const AlgorithmConfig& config) {
  return RmedStepper::next(state, config).phase;
}

Pair select_pair(const RmedState& state, const AlgorithmConfig& config) {
  if (config.variant == Variant::kRandom) {
    throw ValidationError("the random variant draws through random_baseline_select");
  }
  return RmedStepper::next(state, config).pair;
}

void update_and_plan(RmedState& state, const AlgorithmConfig& config, Pair pair,
                     std::optional<bool> outcome) {
  RmedStepper::update(state, config, pair, outcome);
}

Pair random_baseline_select(Rng& rng, int num_arms) {
  if (num_arms < 2) throw ValidationError("random baseline needs K >= 2");
  const auto idx = uniform_below(rng, pair_count(num_arms));
  // Invert pair_index: largest hi with hi(hi-1)/2 <= idx.
  Arm hi = 1;
  while (static_cast<std::uint64_t>(hi + 1) * hi / 2 <= idx) ++hi;
  return Pair{hi, static_cast<Arm>(idx - static_cast<std::uint64_t>(hi) * (hi - 1) / 2)};
}

Duelist::Duelist(int num_arms, const AlgorithmConfig& config)
    : config_(config), state_(num_arms) {
  config_.validate();
  if (num_arms < 2) throw ValidationError("dueling needs at least two arms");
  if (config_.variant == Variant::kCw && num_arms > config_.max_arms) {
    std::ostringstream msg;
    msg << "cw variant solves the exact program every planning event and "
           "needs K <= "
        << config_.max_arms << ", got K = " << num_arms;
    throw Error(ErrorKind::kTooLarge, msg.str());
  }
}

Pair Duelist::select(Rng& rng) {
  if (config_.variant == Variant::kRandom) {
    return random_baseline_select(rng, state_.num_arms());
  }
  return select_pair(state_, config_);
}

void Duelist::observe(Pair pair, std::optional<bool> outcome) {
  update_and_plan(state_, config_, pair, outcome);
}

}  // namespace copeland
