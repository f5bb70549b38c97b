#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gridrl::nn {

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t step = 0;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState create(std::size_t n, double learning_rate);
};

// Standard bias-corrected Adam step in place.
void adam_update(std::span<double> params, std::span<const double> grad,
                 AdamState& state);

// target <- (1 - tau) * target + tau * online.
void soft_update(std::span<double> target, std::span<const double> online,
                 double tau);

}  // namespace gridrl::nn
