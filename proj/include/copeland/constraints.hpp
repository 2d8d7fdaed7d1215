#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "copeland/copeland.hpp"
#include "copeland/preference_matrix.hpp"

namespace copeland {

// Exploration rate per distinct pair (draws per unit of ln t), indexed by
// pair_index.
class RateVector {
 public:
  RateVector() = default;
  explicit RateVector(int num_arms, double fill = 0.0)
      : num_arms_(num_arms), values_(pair_count(num_arms), fill) {}

  int num_arms() const { return num_arms_; }
  double operator[](Pair p) const { return values_[pair_index(p)]; }
  double& operator[](Pair p) { return values_[pair_index(p)]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  friend bool operator==(const RateVector&, const RateVector&) = default;

 private:
  int num_arms_ = 0;
  std::vector<double> values_;
};

// Which exploration program a family encodes: the exact Copeland-winner
// constraints, or the efficient relaxation with pinned winner rates.
enum class FamilyKind { kExact, kEfficient };

// One divergence constraint: flipping every pair in
//   {(winner, j) : j in raised} u {(rival, j) : j in lowered}
// would leave the rival with at most `level` losses and the winner with
// level + 1, so those pairs need a combined budget of at least 1.
struct Descriptor {
  Arm rival = 0;
  int level = 0;
  std::vector<Arm> raised;   // I, a subset of H_winner
  std::vector<Arm> lowered;  // S, a subset of B_rival minus the winner
};

inline constexpr double kConstraintTolerance = 1e-12;

class ConstraintFamily {
 public:
  // Both throw Error(kNotAWinner) unless L_winner == L_(1). Pairs tied at
  // exactly 1/2 carry no divergence and never enter a descriptor.
  static ConstraintFamily exact(const PreferenceMatrix& matrix, Arm winner);
  static ConstraintFamily efficient(const PreferenceMatrix& matrix, Arm winner);

  FamilyKind kind() const { return kind_; }
  Arm winner() const { return winner_; }
  int num_arms() const { return summary_.num_arms; }
  const CopelandSummary& summary() const { return summary_; }
  // d(nu_ij, 1/2) by pair_index.
  double divergence(Pair p) const { return divergence_[pair_index(p)]; }
  std::span<const double> divergences() const { return divergence_; }

  // Efficient family only: pairs (winner, j), j in H_winner, whose rate is
  // pinned to 1 / d(nu, 1/2). Feasibility treats the pins as lower bounds.
  const std::vector<Pair>& pins() const { return pins_; }

  // Visits every non-vacuous descriptor in a fixed order without
  // materialising the family; stops early when `visit` returns false.
  void for_each_descriptor(const std::function<bool(const Descriptor&)>& visit) const;
  std::size_t descriptor_count() const;

  std::vector<Pair> pair_set(const Descriptor& d) const;
  // sum over the pair set of q_ij d(nu_ij, 1/2).
  double budget(const Descriptor& d, const RateVector& rates) const;

 private:
  ConstraintFamily(FamilyKind kind, const PreferenceMatrix& matrix, Arm winner);

  FamilyKind kind_;
  Arm winner_;
  CopelandSummary summary_;
  std::vector<double> divergence_;
  std::vector<Pair> pins_;
};

inline ConstraintFamily cw_constraints(const PreferenceMatrix& m, Arm winner) {
  return ConstraintFamily::exact(m, winner);
}
inline ConstraintFamily ecw_constraints(const PreferenceMatrix& m, Arm winner) {
  return ConstraintFamily::efficient(m, winner);
}

// True iff every descriptor budget (and every pin, read as >=) reaches
// 1 - kConstraintTolerance. Sorts per-arm weights instead of enumerating
// subsets, so the cost is polynomial in K.
bool check_feasible(const ConstraintFamily& family, const RateVector& rates);

}  // namespace copeland
