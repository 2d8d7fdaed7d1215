#pragma once

namespace copeland {

// Bernoulli KL divergence d(p, q) in nats with 0 ln 0 = 0.
// p in [0, 1], q in (0, 1); throws Error(kDomain) otherwise.
double kl_bernoulli(double p, double q);

// d(p, 1/2), the per-draw information for telling a pair's winner apart
// from a tie. Zero exactly when p == 1/2.
double kl_from_half(double p);

}  // namespace copeland
