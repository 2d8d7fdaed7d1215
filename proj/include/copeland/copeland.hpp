#pragma once

#include <cstdint>
#include <vector>

#include "copeland/preference_matrix.hpp"

namespace copeland {

enum class TieMode { kStrict, kTolerant };

// Superiors, inferiors and Copeland losses of every arm. In tolerant mode a
// pair with mu_ij == 1/2 belongs to neither set.
struct CopelandSummary {
  int num_arms = 0;
  std::vector<std::vector<Arm>> superiors;  // B_i: arms beating i, ascending
  std::vector<std::vector<Arm>> inferiors;  // H_i: arms beaten by i, ascending
  std::vector<int> losses;                  // L_i = |B_i|
  std::vector<Arm> winners;                 // argmin L_i, ascending
  std::vector<int> ordered_losses;          // L_(1) <= ... <= L_(K)

  int winner_count() const { return static_cast<int>(winners.size()); }
  int min_loss() const { return ordered_losses.front(); }
  int second_loss() const {
    return ordered_losses.size() > 1 ? ordered_losses[1] : ordered_losses[0];
  }
  bool is_winner(Arm i) const { return losses[i] == min_loss(); }
  bool has_condorcet_winner() const { return min_loss() == 0; }
  bool beats(Arm i, Arm j) const;  // j in H_i

  // Regret numerator L_i + L_j - 2 L_(1); the per-round regret is this over
  // regret_denominator() = 2(K-1).
  std::int64_t regret_numerator(Arm i, Arm j) const {
    return losses[i] + losses[j] - 2 * min_loss();
  }
  std::int64_t regret_denominator() const {
    return num_arms > 1 ? 2 * (num_arms - 1) : 1;
  }
  double regret(Arm i, Arm j) const {
    return static_cast<double>(regret_numerator(i, j)) /
           static_cast<double>(regret_denominator());
  }
};

// Throws Error(kTiedPreference) in strict mode when some mu_ij == 1/2.
CopelandSummary copeland_summary(const PreferenceMatrix& matrix,
                                 TieMode mode = TieMode::kStrict);

// (L_i + L_j - 2 L_(1)) / (2(K-1)); 0 for K = 1.
double regret_per_pair(const CopelandSummary& summary, Arm i, Arm j);

// Accumulates regret exactly: numerators are integers over a fixed
// denominator, so the running total never drifts.
class RegretLedger {
 public:
  explicit RegretLedger(const CopelandSummary& summary)
      : summary_(&summary) {}

  void record(Pair pair) {
    numerator_ += summary_->regret_numerator(pair.hi, pair.lo);
    ++rounds_;
  }
  double cumulative() const {
    return static_cast<double>(numerator_) /
           static_cast<double>(summary_->regret_denominator());
  }
  std::int64_t numerator() const { return numerator_; }
  std::int64_t rounds() const { return rounds_; }

 private:
  const CopelandSummary* summary_;
  std::int64_t numerator_ = 0;
  std::int64_t rounds_ = 0;
};

}  // namespace copeland
