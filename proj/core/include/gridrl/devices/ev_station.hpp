#pragma once

#include <cstdint>
#include <vector>

#include "gridrl/env/component_env.hpp"

namespace gridrl::dev {

struct EvStationParams {
  int chargers = 5;
  double vehicle_max_rate_kw = 7.0;
  double demand_min_kwh = 5.0;
  double demand_max_kwh = 25.0;
  double dwell_min_h = 2.0;
  double dwell_max_h = 8.0;
  double arrival_rate_busy_per_h = 1.0;   // during [busy_start_h, busy_end_h)
  double arrival_rate_quiet_per_h = 0.1;
  double busy_start_h = 6.0;
  double busy_end_h = 22.0;
  double peak_threshold_kw = 20.0;
  double unmet_weight = 1.0;
  double peak_weight = 0.1;
  double power_factor = 0.95;
};

struct VehiclePlan {
  int arrival_step = 0;
  int departure_step = 0;  // scheduled; the vehicle leaves regardless
  double demand_kwh = 0.0;
  double max_rate_kw = 0.0;
};

// Seeded day-ahead arrival schedule. Bernoulli arrival per step with
// probability rate(t) * dt; on arrival, demand and dwell are drawn uniform.
// Draw order per step: arrival coin, then demand, then dwell. Replayable by
// anyone holding (params, horizon, dt, seed).
std::vector<VehiclePlan> sample_arrival_schedule(const EvStationParams& params,
                                                 int horizon, double dt_hours,
                                                 std::uint64_t seed);

// Charging station with one aggregate rate action in [0, 1]: every plugged-in
// vehicle charges at action * its max rate, capped so remaining demand never
// goes negative. Fully charged vehicles depart immediately; vehicles at their
// scheduled departure leave regardless and any remaining demand is counted as
// unmet. Arrivals beyond the charger count are dropped.
//
// Reward: -unmet_weight * (kWh unmet among this step's departures)
//         -peak_weight  * max(0, aggregate_kw - peak_threshold_kw).
//
// Observation (all in [0, 1]):
//   [occupancy / chargers,
//    aggregate_kw / (chargers * max_rate),
//    total remaining demand / (chargers * demand_max),
//    mean time-to-departure / dwell_max]
class EvStationEnv final : public env::ComponentEnvBase {
 public:
  EvStationEnv(std::string name, EvStationParams params, double dt_hours,
               int horizon);

  const env::Space& observation_space() const override { return obs_space_; }
  const env::Space& action_space() const override { return act_space_; }
  std::vector<double> reset(std::uint64_t seed) override;
  env::StepResult step(std::span<const double> action,
                       const env::GridSignal& grid) override;
  double real_power_kw() const override { return aggregate_kw_; }
  double reactive_power_kvar() const override { return aggregate_kw_ * tan_phi_; }

  struct VehicleRecord {
    VehiclePlan plan;
    double delivered_kwh = 0.0;
    double remaining_kwh = 0.0;
    double unmet_kwh = 0.0;
    bool admitted = false;
    bool dropped = false;
    bool departed = false;
  };

  const std::vector<VehicleRecord>& vehicle_records() const { return records_; }
  int occupancy() const;
  double cumulative_unmet_kwh() const { return cumulative_unmet_kwh_; }

 private:
  std::vector<double> observe() const;
  void admit_arrivals(int t);

  EvStationParams params_;
  double dt_hours_;
  env::Space obs_space_;
  env::Space act_space_;
  std::vector<VehicleRecord> records_;
  double aggregate_kw_ = 0.0;
  double cumulative_unmet_kwh_ = 0.0;
  double tan_phi_ = 0.0;
};

}  // namespace gridrl::dev
