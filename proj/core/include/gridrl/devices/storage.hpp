#pragma once

#include "gridrl/env/component_env.hpp"

namespace gridrl::dev {

struct StorageParams {
  double capacity_kwh = 40.0;
  double rated_kw = 10.0;
  double eta_charge = 0.95;
  double eta_discharge = 0.95;
  double initial_soc_fraction = 0.5;
};

// Battery with signed power control: action in [-1, 1], charge positive.
// Grid-side power P = action * rated. State of charge:
//   charging    SoC' = SoC + eta_c * P * dt
//   discharging SoC' = SoC - |P| * dt / eta_d
// At the capacity limits the deliverable power is reduced so SoC stays in
// [0, capacity] exactly. Component reward is zero.
//
// Observation: [SoC / capacity].
class StorageEnv final : public env::ComponentEnvBase {
 public:
  StorageEnv(std::string name, StorageParams params, double dt_hours, int horizon);

  const env::Space& observation_space() const override { return obs_space_; }
  const env::Space& action_space() const override { return act_space_; }
  std::vector<double> reset(std::uint64_t seed) override;
  env::StepResult step(std::span<const double> action,
                       const env::GridSignal& grid) override;
  double real_power_kw() const override { return power_kw_; }

  double soc_kwh() const { return soc_kwh_; }

 private:
  StorageParams params_;
  double dt_hours_;
  env::Space obs_space_;
  env::Space act_space_;
  double soc_kwh_ = 0.0;
  double power_kw_ = 0.0;
};

}  // namespace gridrl::dev
