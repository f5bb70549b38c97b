#pragma once

#include <span>
#include <vector>

namespace gridrl::train {

// Generalized advantage estimation over a (possibly multi-episode)
// trajectory. values has length T+1: the trailing entry is the bootstrap
// value for the state after the last transition; done flags cut the
// bootstrap. Returns RAW advantages; normalization is applied separately per
// update batch.
std::vector<double> gae_advantages(std::span<const double> rewards,
                                   std::span<const double> values,
                                   std::span<const unsigned char> dones,
                                   double gamma, double gae_lambda);

// Discounted rewards-to-go, reset at episode boundaries (done flags).
std::vector<double> discounted_returns(std::span<const double> rewards,
                                       std::span<const unsigned char> dones,
                                       double gamma);

// Zero mean, unit variance in place. A standard-deviation floor keeps
// near-constant batches finite.
void normalize_in_place(std::span<double> v);

}  // namespace gridrl::train
