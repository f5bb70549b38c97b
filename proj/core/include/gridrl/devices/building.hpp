#pragma once

#include <vector>

#include "gridrl/env/component_env.hpp"

namespace gridrl::dev {

struct BuildingParams {
  int zones = 5;
  double ambient_resistance_c_per_kw = 2.0;   // zone <-> outside air
  double internal_resistance_c_per_kw = 1.0;  // zone <-> shared core node
  double capacitance_kwh_per_c = 3.0;
  double cop = 3.0;                           // thermal kW removed per electrical kW
  double hvac_max_kw_per_zone = 10.0;
  double comfort_low_c = 20.0;
  double comfort_high_c = 24.0;
  double comfort_weight = 0.05;
  double energy_weight = 0.01;                // 0 for the comfort-only variant
  bool per_zone_actions = false;              // false: one duty fraction for all zones
  double initial_temp_low_c = 21.0;
  double initial_temp_high_c = 23.0;
  double power_factor = 0.95;                 // lagging, for reactive power
};

// Multi-zone RC thermal model with electric cooling. Each zone couples to the
// ambient series and to a massless shared core node (the mean zone
// temperature). Per step, with duty d_i in [0,1]:
//
//   P_i  = d_i * hvac_max_kw_per_zone                      (electrical)
//   T_i' = T_i + (dt/C) * [ (T_amb - T_i)/R_amb
//                           + (T_core - T_i)/R_int - COP * P_i ]
//
// Reward: -comfort_weight * sum_i dist(T_i', band)^2
//         -energy_weight * P_total * dt.
//
// Observation: [T_1..T_z, T_ambient, P_hvac_total].
class BuildingEnv final : public env::ComponentEnvBase {
 public:
  BuildingEnv(std::string name, BuildingParams params,
              std::vector<double> ambient_c, double dt_hours, int horizon);

  const env::Space& observation_space() const override { return obs_space_; }
  const env::Space& action_space() const override { return act_space_; }
  std::vector<double> reset(std::uint64_t seed) override;
  env::StepResult step(std::span<const double> action,
                       const env::GridSignal& grid) override;
  double real_power_kw() const override { return hvac_kw_; }
  double reactive_power_kvar() const override { return hvac_kw_ * tan_phi_; }

  std::span<const double> zone_temps() const { return temps_; }

 private:
  std::vector<double> observe() const;
  double ambient_at(int step) const;

  BuildingParams params_;
  std::vector<double> ambient_;
  double dt_hours_;
  env::Space obs_space_;
  env::Space act_space_;
  std::vector<double> temps_;
  double hvac_kw_ = 0.0;
  double tan_phi_ = 0.0;
};

}  // namespace gridrl::dev
