#include "copeland/constraints.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "copeland/divergence.hpp"
#include "copeland/errors.hpp"

namespace copeland {

namespace {

// Calls visit on every size-r subset of pool (ascending, lexicographic).
bool for_each_combination(const std::vector<Arm>& pool, int r,
                          const std::function<bool(const std::vector<Arm>&)>& visit) {
  const int n = static_cast<int>(pool.size());
  if (r < 0 || r > n) return true;
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Arm> subset(r);
  while (true) {
    for (int i = 0; i < r; ++i) subset[i] = pool[idx[i]];
    if (!visit(subset)) return false;
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::size_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

std::vector<Arm> without(const std::vector<Arm>& v, Arm x) {
  std::vector<Arm> out;
  out.reserve(v.size());
  for (Arm a : v) {
    if (a != x) out.push_back(a);
  }
  return out;
}

// Smallest-first prefix sums: prefix[c] is the least total of any c
// weights.
std::vector<double> sorted_prefix(std::vector<double> w) {
  std::sort(w.begin(), w.end());
  std::vector<double> prefix(w.size() + 1, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) prefix[i + 1] = prefix[i] + w[i];
  return prefix;
}

bool meets_budget(double total) { return total >= 1.0 - kConstraintTolerance; }

}  // namespace

ConstraintFamily::ConstraintFamily(FamilyKind kind, const PreferenceMatrix& matrix,
                                   Arm winner)
    : kind_(kind),
      winner_(winner),
      summary_(copeland_summary(matrix, TieMode::kTolerant)),
      divergence_(pair_count(matrix.size())) {
  if (winner < 0 || winner >= matrix.size()) {
    throw std::out_of_range("winner index out of range");
  }
  if (!summary_.is_winner(winner)) {
    std::ostringstream msg;
    msg << "arm " << winner + 1 << " has " << summary_.losses[winner]
        << " losses but the Copeland minimum is " << summary_.min_loss();
    throw Error(ErrorKind::kNotAWinner, msg.str());
  }
  for (Pair p : distinct_pairs(matrix.size())) {
    divergence_[pair_index(p)] = kl_from_half(matrix(p.hi, p.lo));
  }
  if (kind_ == FamilyKind::kEfficient) {
    for (Arm j : summary_.inferiors[winner]) pins_.push_back(Pair::of(winner, j));
  }
}

ConstraintFamily ConstraintFamily::exact(const PreferenceMatrix& matrix, Arm winner) {
  return ConstraintFamily(FamilyKind::kExact, matrix, winner);
}

ConstraintFamily ConstraintFamily::efficient(const PreferenceMatrix& matrix,
                                             Arm winner) {
  return ConstraintFamily(FamilyKind::kEfficient, matrix, winner);
}

void ConstraintFamily::for_each_descriptor(
    const std::function<bool(const Descriptor&)>& visit) const {
  const int k = summary_.num_arms;
  const auto& raisable = summary_.inferiors[winner_];
  const int min_loss = summary_.min_loss();

  for (Arm rival = 0; rival < k; ++rival) {
    if (rival == winner_) continue;
    const std::vector<Arm> lowerable = without(summary_.superiors[rival], winner_);
    const int rival_losses = summary_.losses[rival];

    if (kind_ == FamilyKind::kEfficient) {
      const int need = rival_losses - summary_.losses[winner_] + 1;
      Descriptor d{rival, summary_.losses[winner_] - 1, {}, {}};
      const bool go_on = for_each_combination(lowerable, need, [&](const auto& s) {
        d.lowered = s;
        return visit(d);
      });
      if (!go_on) return;
      continue;
    }

    const int first_level = std::max(0, min_loss - 1);
    for (int level = first_level; level <= summary_.second_loss(); ++level) {
      const int raise = level + 1 - min_loss;
      Descriptor d{rival, level, {}, {}};
      const bool go_on = for_each_combination(raisable, raise, [&](const auto& raised) {
        const bool rival_raised =
            std::find(raised.begin(), raised.end(), rival) != raised.end();
        const int lower = std::max(0, rival_losses - level - (rival_raised ? 1 : 0));
        d.raised = raised;
        return for_each_combination(lowerable, lower, [&](const auto& lowered) {
          d.lowered = lowered;
          return visit(d);
        });
      });
      if (!go_on) return;
    }
  }
}

std::size_t ConstraintFamily::descriptor_count() const {
  const int k = summary_.num_arms;
  const auto& raisable = summary_.inferiors[winner_];
  const int min_loss = summary_.min_loss();
  std::size_t total = 0;
  for (Arm rival = 0; rival < k; ++rival) {
    if (rival == winner_) continue;
    const int pool = static_cast<int>(without(summary_.superiors[rival], winner_).size());
    const int rival_losses = summary_.losses[rival];
    if (kind_ == FamilyKind::kEfficient) {
      total += binomial(pool, rival_losses - summary_.losses[winner_] + 1);
      continue;
    }
    const bool rival_is_inferior = summary_.beats(winner_, rival);
    const int others = static_cast<int>(raisable.size()) - (rival_is_inferior ? 1 : 0);
    for (int level = std::max(0, min_loss - 1); level <= summary_.second_loss(); ++level) {
      const int raise = level + 1 - min_loss;
      total += binomial(others, raise) *
               binomial(pool, std::max(0, rival_losses - level));
      if (rival_is_inferior && raise >= 1) {
        total += binomial(others, raise - 1) *
                 binomial(pool, std::max(0, rival_losses - level - 1));
      }
    }
  }
  return total;
}

std::vector<Pair> ConstraintFamily::pair_set(const Descriptor& d) const {
  std::vector<Pair> pairs;
  pairs.reserve(d.raised.size() + d.lowered.size());
  for (Arm j : d.raised) pairs.push_back(Pair::of(winner_, j));
  for (Arm j : d.lowered) pairs.push_back(Pair::of(d.rival, j));
  return pairs;
}

double ConstraintFamily::budget(const Descriptor& d, const RateVector& rates) const {
  double total = 0.0;
  for (Pair p : pair_set(d)) total += rates[p] * divergence(p);
  return total;
}

bool check_feasible(const ConstraintFamily& family, const RateVector& rates) {
  const CopelandSummary& s = family.summary();
  const Arm winner = family.winner();
  const int k = s.num_arms;
  auto weight = [&](Arm a, Arm b) {
    const Pair p = Pair::of(a, b);
    return rates[p] * family.divergence(p);
  };

  if (family.kind() == FamilyKind::kEfficient) {
    for (Pair p : family.pins()) {
      if (!meets_budget(rates[p] * family.divergence(p))) return false;
    }
    for (Arm rival = 0; rival < k; ++rival) {
      if (rival == winner) continue;
      const int need = s.losses[rival] - s.losses[winner] + 1;
      const std::vector<Arm> pool = without(s.superiors[rival], winner);
      if (need > static_cast<int>(pool.size())) continue;
      std::vector<double> w;
      for (Arm j : pool) w.push_back(weight(rival, j));
      if (!meets_budget(sorted_prefix(std::move(w))[need])) return false;
    }
    return true;
  }

  const int min_loss = s.min_loss();
  for (Arm rival = 0; rival < k; ++rival) {
    if (rival == winner) continue;
    const bool rival_is_inferior = s.beats(winner, rival);
    std::vector<double> raise_w;
    for (Arm j : s.inferiors[winner]) {
      if (j != rival) raise_w.push_back(weight(winner, j));
    }
    std::vector<double> lower_w;
    for (Arm j : s.superiors[rival]) {
      if (j != winner) lower_w.push_back(weight(rival, j));
    }
    const auto raise_prefix = sorted_prefix(std::move(raise_w));
    const auto lower_prefix = sorted_prefix(std::move(lower_w));
    const int raise_pool = static_cast<int>(raise_prefix.size()) - 1;
    const int lower_pool = static_cast<int>(lower_prefix.size()) - 1;

    for (int level = std::max(0, min_loss - 1); level <= s.second_loss(); ++level) {
      const int raise = level + 1 - min_loss;
      // Rival left out of the raised set.
      const int lower_a = std::max(0, s.losses[rival] - level);
      if (raise <= raise_pool && lower_a <= lower_pool &&
          !meets_budget(raise_prefix[raise] + lower_prefix[lower_a])) {
        return false;
      }
      // Rival inside the raised set: its pair with the winner is forced in
      // and the rival needs one fewer lowered superior.
      if (rival_is_inferior && raise >= 1) {
        const int lower_b = std::max(0, s.losses[rival] - level - 1);
        if (raise - 1 <= raise_pool && lower_b <= lower_pool &&
            !meets_budget(weight(winner, rival) + raise_prefix[raise - 1] +
                          lower_prefix[lower_b])) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace copeland
