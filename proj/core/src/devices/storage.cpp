#include "gridrl/devices/storage.hpp"

#include <algorithm>

#include "gridrl/util/errors.hpp"

namespace gridrl::dev {

StorageEnv::StorageEnv(std::string name, StorageParams params, double dt_hours,
                       int horizon)
    : ComponentEnvBase(std::move(name), horizon), params_(params), dt_hours_(dt_hours) {
  if (!(params_.capacity_kwh > 0.0) || !(params_.rated_kw > 0.0))
    throw ConfigError(name_ + ": capacity and rated power must be positive");
  if (!(params_.eta_charge > 0.0 && params_.eta_charge <= 1.0) ||
      !(params_.eta_discharge > 0.0 && params_.eta_discharge <= 1.0))
    throw ConfigError(name_ + ": efficiencies must be in (0, 1]");
  if (!(params_.initial_soc_fraction >= 0.0 && params_.initial_soc_fraction <= 1.0))
    throw ConfigError(name_ + ": initial SoC fraction must be in [0, 1]");
  if (!(dt_hours_ > 0.0)) throw ConfigError(name_ + ": dt must be positive");

  obs_space_ = env::Space({0.0}, {1.0});
  act_space_ = env::Space({-1.0}, {1.0});
}

std::vector<double> StorageEnv::reset(std::uint64_t) {
  soc_kwh_ = params_.initial_soc_fraction * params_.capacity_kwh;
  power_kw_ = 0.0;
  step_ = 0;
  return {soc_kwh_ / params_.capacity_kwh};
}

env::StepResult StorageEnv::step(std::span<const double> action,
                                 const env::GridSignal&) {
  check_step_preconditions(action, act_space_);
  const double requested_kw = action[0] * params_.rated_kw;

  if (requested_kw >= 0.0) {
    double energy = params_.eta_charge * requested_kw * dt_hours_;
    const double headroom = params_.capacity_kwh - soc_kwh_;
    if (energy > headroom) energy = headroom;
    soc_kwh_ = std::min(params_.capacity_kwh, soc_kwh_ + energy);
    power_kw_ = energy / (params_.eta_charge * dt_hours_);
  } else {
    double delivered = -requested_kw * dt_hours_;  // grid-side kWh
    const double available = soc_kwh_ * params_.eta_discharge;
    if (delivered > available) delivered = available;
    soc_kwh_ = std::max(0.0, soc_kwh_ - delivered / params_.eta_discharge);
    power_kw_ = -delivered / dt_hours_;
  }
  step_ += 1;

  env::StepResult out;
  out.observation = {soc_kwh_ / params_.capacity_kwh};
  out.reward = 0.0;
  out.done = done();
  out.meta["soc_kwh"] = soc_kwh_;
  out.meta["storage_kw"] = power_kw_;
  return out;
}

}  // namespace gridrl::dev
