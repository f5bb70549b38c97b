#include "gridrl/train/gae.hpp"

#include <cmath>
#include <stdexcept>

namespace gridrl::train {

std::vector<double> gae_advantages(std::span<const double> rewards,
                                   std::span<const double> values,
                                   std::span<const unsigned char> dones,
                                   double gamma, double gae_lambda) {
  const std::size_t t_len = rewards.size();
  if (dones.size() != t_len || values.size() != t_len + 1)
    throw std::invalid_argument(
        "gae_advantages: need |rewards| == |dones| and |values| == T+1");

  std::vector<double> adv(t_len, 0.0);
  double carry = 0.0;
  for (std::size_t i = t_len; i-- > 0;) {
    const double not_done = dones[i] ? 0.0 : 1.0;
    const double delta = rewards[i] + gamma * not_done * values[i + 1] - values[i];
    carry = delta + gamma * gae_lambda * not_done * carry;
    adv[i] = carry;
  }
  return adv;
}

std::vector<double> discounted_returns(std::span<const double> rewards,
                                       std::span<const unsigned char> dones,
                                       double gamma) {
  if (dones.size() != rewards.size())
    throw std::invalid_argument("discounted_returns: length mismatch");
  std::vector<double> ret(rewards.size(), 0.0);
  double carry = 0.0;
  for (std::size_t i = rewards.size(); i-- > 0;) {
    if (dones[i]) carry = 0.0;
    carry = rewards[i] + gamma * carry;
    ret[i] = carry;
  }
  return ret;
}

void normalize_in_place(std::span<double> v) {
  if (v.empty()) return;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  const double sd = std::sqrt(var);
  if (sd < 1e-8) {
    for (double& x : v) x -= mean;
    return;
  }
  for (double& x : v) x = (x - mean) / sd;
}

}  // namespace gridrl::train
