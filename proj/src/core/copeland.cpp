#include "copeland/copeland.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "copeland/divergence.hpp"
#include "copeland/errors.hpp"

namespace copeland {

bool CopelandSummary::beats(Arm i, Arm j) const {
  const auto& h = inferiors[i];
  return std::binary_search(h.begin(), h.end(), j);
}

CopelandSummary copeland_summary(const PreferenceMatrix& matrix, TieMode mode) {
  const int k = matrix.size();
  CopelandSummary s;
  s.num_arms = k;
  s.superiors.resize(k);
  s.inferiors.resize(k);
  for (Arm i = 0; i < k; ++i) {
    for (Arm j = 0; j < k; ++j) {
      if (i == j) continue;
      const double mu = matrix(i, j);
      if (mu < 0.5) {
        s.superiors[i].push_back(j);
      } else if (mu > 0.5) {
        s.inferiors[i].push_back(j);
      } else if (mode == TieMode::kStrict) {
        std::ostringstream msg;
        msg << "mu_" << i + 1 << "," << j + 1 << " = 1/2 in strict mode";
        throw Error(ErrorKind::kTiedPreference, msg.str());
      }
    }
  }
  s.losses.resize(k);
  for (Arm i = 0; i < k; ++i) s.losses[i] = static_cast<int>(s.superiors[i].size());
  s.ordered_losses = s.losses;
  std::sort(s.ordered_losses.begin(), s.ordered_losses.end());
  for (Arm i = 0; i < k; ++i) {
    if (s.losses[i] == s.ordered_losses.front()) s.winners.push_back(i);
  }
  return s;
}

double regret_per_pair(const CopelandSummary& summary, Arm i, Arm j) {
  if (i < 0 || j < 0 || i >= summary.num_arms || j >= summary.num_arms) {
    throw std::out_of_range("arm index out of range");
  }
  return summary.regret(i, j);
}

double kl_bernoulli(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::kDomain, "kl_bernoulli: p outside [0, 1]");
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorKind::kDomain, "kl_bernoulli: q outside (0, 1)");
  }
  double d = 0.0;
  if (p > 0.0) d += p * std::log(p / q);
  if (p < 1.0) d += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return std::max(d, 0.0);
}

double kl_from_half(double p) { return kl_bernoulli(p, 0.5); }

}  // namespace copeland
