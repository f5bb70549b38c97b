#include "gridrl/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace gridrl::nn {

AdamState AdamState::create(std::size_t n, double learning_rate) {
  AdamState s;
  s.m.assign(n, 0.0);
  s.v.assign(n, 0.0);
  s.learning_rate = learning_rate;
  return s;
}

void adam_update(std::span<double> params, std::span<const double> grad,
                 AdamState& state) {
  if (params.size() != grad.size() || params.size() != state.m.size())
    throw std::invalid_argument("adam_update: length mismatch");

  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grad[i];
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    params[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
}

void soft_update(std::span<double> target, std::span<const double> online,
                 double tau) {
  if (target.size() != online.size())
    throw std::invalid_argument("soft_update: length mismatch");
  if (!(tau > 0.0 && tau <= 1.0))
    throw std::invalid_argument("soft_update: tau must be in (0, 1]");
  for (std::size_t i = 0; i < target.size(); ++i)
    target[i] = (1.0 - tau) * target[i] + tau * online[i];
}

}  // namespace gridrl::nn
