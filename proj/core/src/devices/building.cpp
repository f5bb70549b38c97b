#include "gridrl/devices/building.hpp"

#include <algorithm>
#include <cmath>

#include "gridrl/util/errors.hpp"
#include "gridrl/util/rng.hpp"

namespace gridrl::dev {

namespace {
constexpr double kTempLow = -60.0;
constexpr double kTempHigh = 70.0;
}  // namespace

BuildingEnv::BuildingEnv(std::string name, BuildingParams params,
                         std::vector<double> ambient_c, double dt_hours, int horizon)
    : ComponentEnvBase(std::move(name), horizon),
      params_(params),
      ambient_(std::move(ambient_c)),
      dt_hours_(dt_hours) {
  if (params_.zones < 1) throw ConfigError(name_ + ": zones must be >= 1");
  if (!(dt_hours_ > 0.0)) throw ConfigError(name_ + ": dt must be positive");
  if (!(params_.ambient_resistance_c_per_kw > 0.0) ||
      !(params_.internal_resistance_c_per_kw > 0.0) ||
      !(params_.capacitance_kwh_per_c > 0.0) || !(params_.cop > 0.0) ||
      !(params_.hvac_max_kw_per_zone >= 0.0))
    throw ConfigError(name_ + ": thermal parameters must be positive");
  if (!(params_.comfort_low_c < params_.comfort_high_c))
    throw ConfigError(name_ + ": comfort band must satisfy low < high");
  if (params_.comfort_weight < 0.0 || params_.energy_weight < 0.0)
    throw ConfigError(name_ + ": reward weights must be non-negative");
  if (!(params_.power_factor > 0.0 && params_.power_factor <= 1.0))
    throw ConfigError(name_ + ": power factor must be in (0, 1]");
  if (static_cast<int>(ambient_.size()) < horizon_)
    throw ConfigError(name_ + ": ambient series (" + std::to_string(ambient_.size()) +
                      ") is shorter than the episode horizon (" +
                      std::to_string(horizon_) + ")");
  for (double a : ambient_)
    if (!(a > kTempLow && a < kTempHigh))
      throw ConfigError(name_ + ": ambient series value out of plausible range");

  const int z = params_.zones;
  std::vector<double> lo(z, kTempLow), hi(z, kTempHigh);
  lo.push_back(kTempLow);
  hi.push_back(kTempHigh);
  lo.push_back(0.0);
  hi.push_back(z * params_.hvac_max_kw_per_zone);
  obs_space_ = env::Space(std::move(lo), std::move(hi));

  const int act_dim = params_.per_zone_actions ? z : 1;
  act_space_ = env::Space(std::vector<double>(act_dim, 0.0),
                          std::vector<double>(act_dim, 1.0));

  const double pf = params_.power_factor;
  tan_phi_ = std::sqrt(1.0 - pf * pf) / pf;
  temps_.assign(z, 0.5 * (params_.comfort_low_c + params_.comfort_high_c));
}

double BuildingEnv::ambient_at(int step) const {
  return ambient_[static_cast<std::size_t>(std::min(step, horizon_ - 1))];
}

std::vector<double> BuildingEnv::reset(std::uint64_t seed) {
  Rng rng(seed);
  for (double& t : temps_)
    t = rng.uniform(params_.initial_temp_low_c, params_.initial_temp_high_c);
  hvac_kw_ = 0.0;
  step_ = 0;
  return observe();
}

env::StepResult BuildingEnv::step(std::span<const double> action,
                                  const env::GridSignal&) {
  check_step_preconditions(action, act_space_);

  const int z = params_.zones;
  const double t_amb = ambient_at(step_);
  double t_core = 0.0;
  for (double t : temps_) t_core += t;
  t_core /= z;

  double p_total = 0.0;
  const double a = dt_hours_ / params_.capacitance_kwh_per_c;
  for (int i = 0; i < z; ++i) {
    const double duty = params_.per_zone_actions ? action[i] : action[0];
    const double p_zone = duty * params_.hvac_max_kw_per_zone;
    p_total += p_zone;
    temps_[i] += a * ((t_amb - temps_[i]) / params_.ambient_resistance_c_per_kw +
                      (t_core - temps_[i]) / params_.internal_resistance_c_per_kw -
                      params_.cop * p_zone);
  }
  hvac_kw_ = p_total;
  step_ += 1;

  double comfort_sq = 0.0;
  for (double t : temps_) {
    const double excess = std::max(0.0, t - params_.comfort_high_c) +
                          std::max(0.0, params_.comfort_low_c - t);
    comfort_sq += excess * excess;
  }

  env::StepResult out;
  out.observation = observe();
  out.reward = -params_.comfort_weight * comfort_sq -
               params_.energy_weight * p_total * dt_hours_;
  out.done = done();
  out.meta["hvac_kw"] = hvac_kw_;
  out.meta["t_mean_c"] = t_core;
  out.meta["comfort_sq"] = comfort_sq;
  return out;
}

std::vector<double> BuildingEnv::observe() const {
  std::vector<double> obs(temps_.begin(), temps_.end());
  obs.push_back(ambient_at(step_));
  obs.push_back(hvac_kw_);
  return obs;
}

}  // namespace gridrl::dev
