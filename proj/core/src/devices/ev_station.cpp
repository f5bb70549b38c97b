#include "gridrl/devices/ev_station.hpp"

#include <algorithm>
#include <cmath>

#include "gridrl/util/errors.hpp"
#include "gridrl/util/rng.hpp"

namespace gridrl::dev {

namespace {
constexpr double kChargedEps = 1e-12;
}

std::vector<VehiclePlan> sample_arrival_schedule(const EvStationParams& params,
                                                 int horizon, double dt_hours,
                                                 std::uint64_t seed) {
  Rng rng(seed);
  std::vector<VehiclePlan> plans;
  for (int t = 0; t < horizon; ++t) {
    const double hour = std::fmod(t * dt_hours, 24.0);
    const double rate = (hour >= params.busy_start_h && hour < params.busy_end_h)
                            ? params.arrival_rate_busy_per_h
                            : params.arrival_rate_quiet_per_h;
    const double p = std::min(1.0, rate * dt_hours);
    if (rng.uniform() < p) {
      VehiclePlan v;
      v.arrival_step = t;
      v.demand_kwh = rng.uniform(params.demand_min_kwh, params.demand_max_kwh);
      const double dwell_h = rng.uniform(params.dwell_min_h, params.dwell_max_h);
      v.departure_step = t + std::max(1, static_cast<int>(std::ceil(dwell_h / dt_hours - 1e-9)));
      v.max_rate_kw = params.vehicle_max_rate_kw;
      plans.push_back(v);
    }
  }
  return plans;
}

EvStationEnv::EvStationEnv(std::string name, EvStationParams params,
                           double dt_hours, int horizon)
    : ComponentEnvBase(std::move(name), horizon), params_(params), dt_hours_(dt_hours) {
  if (params_.chargers < 1) throw ConfigError(name_ + ": chargers must be >= 1");
  if (!(params_.vehicle_max_rate_kw > 0.0))
    throw ConfigError(name_ + ": vehicle max rate must be positive");
  if (!(params_.demand_min_kwh > 0.0 && params_.demand_min_kwh <= params_.demand_max_kwh))
    throw ConfigError(name_ + ": demand range must satisfy 0 < min <= max");
  if (!(params_.dwell_min_h > 0.0 && params_.dwell_min_h <= params_.dwell_max_h))
    throw ConfigError(name_ + ": dwell range must satisfy 0 < min <= max");
  if (params_.unmet_weight < 0.0 || params_.peak_weight < 0.0 ||
      params_.peak_threshold_kw < 0.0)
    throw ConfigError(name_ + ": reward weights must be non-negative");
  if (!(params_.power_factor > 0.0 && params_.power_factor <= 1.0))
    throw ConfigError(name_ + ": power factor must be in (0, 1]");
  if (!(dt_hours_ > 0.0)) throw ConfigError(name_ + ": dt must be positive");

  obs_space_ = env::Space({0.0, 0.0, 0.0, 0.0}, {1.0, 1.0, 1.0, 1.0});
  act_space_ = env::Space({0.0}, {1.0});
  const double pf = params_.power_factor;
  tan_phi_ = std::sqrt(1.0 - pf * pf) / pf;
}

int EvStationEnv::occupancy() const {
  int n = 0;
  for (const auto& v : records_)
    if (v.admitted && !v.departed) ++n;
  return n;
}

void EvStationEnv::admit_arrivals(int t) {
  for (auto& v : records_) {
    if (v.admitted || v.dropped || v.plan.arrival_step != t) continue;
    if (occupancy() < params_.chargers)
      v.admitted = true;
    else
      v.dropped = true;  // station full, the vehicle moves on
  }
}

std::vector<double> EvStationEnv::reset(std::uint64_t seed) {
  const auto plans = sample_arrival_schedule(params_, horizon_, dt_hours_, seed);
  records_.clear();
  records_.reserve(plans.size());
  for (const auto& p : plans) {
    VehicleRecord r;
    r.plan = p;
    r.remaining_kwh = p.demand_kwh;
    records_.push_back(r);
  }
  aggregate_kw_ = 0.0;
  cumulative_unmet_kwh_ = 0.0;
  step_ = 0;
  admit_arrivals(0);
  return observe();
}

env::StepResult EvStationEnv::step(std::span<const double> action,
                                   const env::GridSignal&) {
  check_step_preconditions(action, act_space_);
  const double rate_fraction = action[0];

  double aggregate_kw = 0.0;
  for (auto& v : records_) {
    if (!v.admitted || v.departed) continue;
    const double energy = std::min(rate_fraction * v.plan.max_rate_kw * dt_hours_,
                                   v.remaining_kwh);
    v.delivered_kwh += energy;
    v.remaining_kwh -= energy;
    aggregate_kw += energy / dt_hours_;
  }

  const int next_t = step_ + 1;
  double unmet_now = 0.0;
  for (auto& v : records_) {
    if (!v.admitted || v.departed) continue;
    if (v.remaining_kwh <= kChargedEps) {
      v.departed = true;
      v.remaining_kwh = 0.0;
    } else if (v.plan.departure_step <= next_t) {
      v.departed = true;
      v.unmet_kwh = v.remaining_kwh;
      v.remaining_kwh = 0.0;
      unmet_now += v.unmet_kwh;
    }
  }
  cumulative_unmet_kwh_ += unmet_now;
  admit_arrivals(next_t);

  aggregate_kw_ = aggregate_kw;
  step_ = next_t;

  const double exceed_kw = std::max(0.0, aggregate_kw - params_.peak_threshold_kw);

  env::StepResult out;
  out.observation = observe();
  out.reward = -params_.unmet_weight * unmet_now - params_.peak_weight * exceed_kw;
  out.done = done();
  out.meta["ev_agg_kw"] = aggregate_kw;
  out.meta["ev_unmet_kwh"] = unmet_now;
  out.meta["ev_occupancy"] = static_cast<double>(occupancy());
  out.meta["ev_exceed_kw"] = exceed_kw;
  return out;
}

std::vector<double> EvStationEnv::observe() const {
  const double station_max_kw = params_.chargers * params_.vehicle_max_rate_kw;
  const double station_max_kwh = params_.chargers * params_.demand_max_kwh;
  const double dwell_max_steps = params_.dwell_max_h / dt_hours_;

  int occ = 0;
  double remaining = 0.0;
  double ttd = 0.0;
  for (const auto& v : records_) {
    if (!v.admitted || v.departed) continue;
    ++occ;
    remaining += v.remaining_kwh;
    const double steps_left = static_cast<double>(v.plan.departure_step - step_);
    ttd += std::clamp(steps_left / dwell_max_steps, 0.0, 1.0);
  }

  return {static_cast<double>(occ) / params_.chargers,
          std::clamp(aggregate_kw_ / station_max_kw, 0.0, 1.0),
          std::clamp(remaining / station_max_kwh, 0.0, 1.0),
          occ > 0 ? ttd / occ : 0.0};
}

}  // namespace gridrl::dev
