#include "gridrl/devices/pv.hpp"

#include <algorithm>
#include <string>

#include "gridrl/util/errors.hpp"

namespace gridrl::dev {

PvArrayEnv::PvArrayEnv(std::string name, PvParams params,
                       std::vector<double> available_kw, double dt_hours,
                       int horizon)
    : ComponentEnvBase(std::move(name), horizon),
      params_(params),
      available_(std::move(available_kw)) {
  if (!(params_.rating_kw > 0.0)) throw ConfigError(name_ + ": rating must be positive");
  if (!(dt_hours > 0.0)) throw ConfigError(name_ + ": dt must be positive");
  if (static_cast<int>(available_.size()) < horizon_)
    throw ConfigError(name_ + ": availability series (" +
                      std::to_string(available_.size()) +
                      ") is shorter than the episode horizon (" +
                      std::to_string(horizon_) + ")");
  for (double v : available_)
    if (!(v >= 0.0 && v <= params_.rating_kw * (1.0 + 1e-12)))
      throw ConfigError(name_ + ": availability must lie in [0, rating]");

  obs_space_ = env::Space({0.0, 0.0}, {params_.rating_kw, params_.rating_kw});
  act_space_ = env::Space({0.0}, {1.0});
}

double PvArrayEnv::available_at(int step) const {
  return available_[static_cast<std::size_t>(std::min(step, horizon_ - 1))];
}

std::vector<double> PvArrayEnv::reset(std::uint64_t) {
  step_ = 0;
  injected_kw_ = available_at(0);  // no curtailment until the first action
  return observe();
}

env::StepResult PvArrayEnv::step(std::span<const double> action,
                                 const env::GridSignal&) {
  check_step_preconditions(action, act_space_);
  const double available = available_[static_cast<std::size_t>(step_)];
  injected_kw_ = action[0] * available;
  step_ += 1;

  env::StepResult out;
  out.observation = observe();
  out.reward = 0.0;
  out.done = done();
  out.meta["pv_available_kw"] = available;
  out.meta["pv_injected_kw"] = injected_kw_;
  return out;
}

std::vector<double> PvArrayEnv::observe() const {
  return {available_at(step_), injected_kw_};
}

}  // namespace gridrl::dev
