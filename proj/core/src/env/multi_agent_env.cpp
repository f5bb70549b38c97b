#include "gridrl/env/multi_agent_env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gridrl/util/errors.hpp"
#include "gridrl/util/rng.hpp"

namespace gridrl::env {

std::vector<double> observation_with_grid(std::span<const double> raw_obs,
                                          const GridSignal& signal,
                                          const std::vector<bool>& mask) {
  if (mask.size() > 3)
    throw std::invalid_argument("grid observation mask has more entries than grid fields");
  std::vector<double> out(raw_obs.begin(), raw_obs.end());
  const double fields[3] = {signal.v_comm, signal.v_min, signal.v_max};
  for (std::size_t k = 0; k < mask.size(); ++k)
    if (mask[k]) out.push_back(fields[k]);
  return out;
}

namespace {

constexpr double kGridObsLow = 0.0;
constexpr double kGridObsHigh = 2.0;

Space augment_space(const Space& base, const GridObservationMask& mask) {
  const int extra = mask.count();
  if (extra == 0) return base;
  std::vector<double> lo(base.low), hi(base.high);
  for (int k = 0; k < extra; ++k) {
    lo.push_back(kGridObsLow);
    hi.push_back(kGridObsHigh);
  }
  return Space(std::move(lo), std::move(hi));
}

}  // namespace

GridMultiAgentEnv::GridMultiAgentEnv(pf::FeederModel feeder, Options options)
    : feeder_(std::move(feeder)), options_(std::move(options)) {
  if (options_.agents.empty()) throw ConfigError("multi-agent env: no agents");
  if (options_.horizon <= 0) throw ConfigError("multi-agent env: horizon must be positive");
  if (!(options_.load_power_factor > 0.0 && options_.load_power_factor <= 1.0))
    throw ConfigError("multi-agent env: load power factor must be in (0, 1]");
  if (!(options_.band_lower < options_.band_upper))
    throw ConfigError("multi-agent env: voltage band is empty");
  if (!options_.solver)
    options_.solver = std::make_shared<pf::RadialSweepSolver>();

  const double pf = options_.load_power_factor;
  load_tan_phi_ = std::sqrt(1.0 - pf * pf) / pf;

  std::sort(options_.agents.begin(), options_.agents.end(),
            [](const AgentSpec& a, const AgentSpec& b) { return a.id < b.id; });
  for (auto& spec : options_.agents) {
    if (spec.id.empty()) throw ConfigError("multi-agent env: empty agent id");
    if (spec.id == "__all__")
      throw ConfigError("multi-agent env: agent id \"__all__\" is reserved");
    if (!spec.env) throw ConfigError(spec.id + ": agent has no environment");
    if (slot_index_.count(spec.id))
      throw ConfigError("multi-agent env: duplicate agent id \"" + spec.id + "\"");
    const int bus = feeder_.bus_index(spec.bus);
    if (bus < 0)
      throw ConfigError(spec.id + ": unknown feeder bus \"" + spec.bus + "\"");
    if (bus == feeder_.slack_index())
      throw ConfigError(spec.id + ": agents cannot sit on the slack bus");
    if (spec.env->horizon() != options_.horizon)
      throw ConfigError(spec.id + ": agent horizon " +
                        std::to_string(spec.env->horizon()) +
                        " does not match environment horizon " +
                        std::to_string(options_.horizon));

    Slot slot;
    slot.bus_index = bus;
    slot.augmented_obs_space = augment_space(spec.env->observation_space(), spec.grid_obs);
    slot.spec = std::move(spec);
    slot_index_[slot.spec.id] = static_cast<int>(slots_.size());
    ids_.push_back(slot.spec.id);
    slots_.push_back(std::move(slot));
  }

  for (const auto& [bus, series] : options_.base_load_kw) {
    const int i = feeder_.bus_index(bus);
    if (i < 0) throw ConfigError("base load references unknown bus \"" + bus + "\"");
    if (i == feeder_.slack_index())
      throw ConfigError("base load cannot be placed on the slack bus");
    if (static_cast<int>(series.size()) < options_.horizon)
      throw ConfigError("base load profile for bus \"" + bus +
                        "\" is shorter than the horizon");
  }

  for (const auto& term : options_.system_rewards) {
    if (term.kind == SystemRewardTerm::Kind::BusVoltageViolation &&
        feeder_.bus_index(term.bus) < 0)
      throw ConfigError("system reward references unknown bus \"" + term.bus + "\"");
    if (term.agents.empty())
      throw ConfigError("system reward term has no receiving agents");
    if (!(term.v_lower < term.v_upper))
      throw ConfigError("system reward term has an empty voltage band");
    for (const auto& id : term.agents)
      if (!slot_index_.count(id))
        throw ConfigError("system reward references unknown agent \"" + id + "\"");
  }
}

const Space& GridMultiAgentEnv::observation_space(const std::string& id) const {
  const auto it = slot_index_.find(id);
  if (it == slot_index_.end()) throw std::invalid_argument("unknown agent id \"" + id + "\"");
  return slots_[it->second].augmented_obs_space;
}

const Space& GridMultiAgentEnv::action_space(const std::string& id) const {
  const auto it = slot_index_.find(id);
  if (it == slot_index_.end()) throw std::invalid_argument("unknown agent id \"" + id + "\"");
  return slots_[it->second].spec.env->action_space();
}

const GridSignal& GridMultiAgentEnv::last_signal(const std::string& id) const {
  const auto it = slot_index_.find(id);
  if (it == slot_index_.end()) throw std::invalid_argument("unknown agent id \"" + id + "\"");
  return slots_[it->second].signal;
}

ComponentEnv& GridMultiAgentEnv::agent_env(const std::string& id) {
  const auto it = slot_index_.find(id);
  if (it == slot_index_.end()) throw std::invalid_argument("unknown agent id \"" + id + "\"");
  return *slots_[it->second].spec.env;
}

double GridMultiAgentEnv::base_load_at(const std::string& bus, int step) const {
  const auto it = options_.base_load_kw.find(bus);
  if (it == options_.base_load_kw.end()) return 0.0;
  return it->second[static_cast<std::size_t>(step)];
}

pf::PowerFlowResult GridMultiAgentEnv::solve_current(int load_step) const {
  pf::InjectionSet inj(feeder_);
  for (const auto& [bus, series] : options_.base_load_kw) {
    const double p = series[static_cast<std::size_t>(load_step)];
    inj.add(bus, p, p * load_tan_phi_);
  }
  for (const auto& slot : slots_)
    inj.add(slot.bus_index, slot.spec.env->real_power_kw(),
            slot.spec.env->reactive_power_kvar());
  return options_.solver->solve(feeder_, inj);
}

void GridMultiAgentEnv::fill_signals(const pf::PowerFlowResult& result) {
  const double vmin = pf::min_voltage(result);
  const double vmax = pf::max_voltage(result);
  for (auto& slot : slots_) {
    slot.signal.v_comm = result.v_mag_pu[slot.bus_index];
    slot.signal.v_min = vmin;
    slot.signal.v_max = vmax;
  }
}

double GridMultiAgentEnv::system_violation(const pf::PowerFlowResult& result,
                                           const SystemRewardTerm& term) const {
  double v = 0.0;
  if (term.kind == SystemRewardTerm::Kind::BusVoltageViolation)
    v = result.v_mag_pu[feeder_.bus_index(term.bus)];
  else
    v = pf::min_voltage(result);
  return pf::voltage_violation(v, term.v_lower, term.v_upper);
}

void GridMultiAgentEnv::require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw std::runtime_error("non-finite value in " + what);
}

std::map<std::string, std::vector<double>> GridMultiAgentEnv::reset(std::uint64_t seed) {
  std::map<std::string, std::vector<double>> raw;
  for (auto& slot : slots_)
    raw[slot.spec.id] = slot.spec.env->reset(seed ^ fnv1a64(slot.spec.id));

  const pf::PowerFlowResult result = solve_current(0);
  if (!result.converged)
    throw std::runtime_error("power flow did not converge at episode initialization");
  fill_signals(result);

  std::map<std::string, std::vector<double>> obs;
  for (auto& slot : slots_) {
    auto augmented = observation_with_grid(raw[slot.spec.id], slot.signal,
                                           slot.spec.grid_obs.as_list());
    for (double v : augmented) require_finite(v, slot.spec.id + " observation");
    obs[slot.spec.id] = std::move(augmented);
  }
  step_ = 0;
  episode_done_ = false;
  return obs;
}

MultiAgentStep GridMultiAgentEnv::step(
    const std::map<std::string, std::vector<double>>& actions) {
  if (episode_done_)
    throw std::logic_error("step() called on a finished episode (reset first)");
  if (actions.size() != slots_.size())
    throw std::invalid_argument("action map must contain exactly the agent ids");
  for (const auto& id : ids_)
    if (!actions.count(id))
      throw std::invalid_argument("action map is missing agent \"" + id + "\"");

  MultiAgentStep out;

  // 1+2: clamp, then advance device dynamics serially in sorted-id order.
  std::map<std::string, StepResult> results;
  for (auto& slot : slots_) {
    const auto clamped =
        clamp_action(actions.at(slot.spec.id), slot.spec.env->action_space());
    for (double a : clamped) require_finite(a, slot.spec.id + " action");
    results[slot.spec.id] = slot.spec.env->step(clamped, slot.signal);
  }

  // 3+4: aggregate with base load (profile index = the step being simulated)
  // and solve.
  const pf::PowerFlowResult result = solve_current(step_);
  step_ += 1;
  const bool horizon_reached = step_ >= options_.horizon;

  if (!result.converged) {
    episode_done_ = true;
    for (auto& slot : slots_) {
      const auto& id = slot.spec.id;
      StepResult& r = results[id];
      const double reward = r.reward + options_.divergence_penalty;
      out.observations[id] = observation_with_grid(r.observation, slot.signal,
                                                   slot.spec.grid_obs.as_list());
      out.rewards[id] = reward;
      out.dones[id] = true;
      auto meta = std::move(r.meta);
      meta["r_agent"] = r.reward;
      meta["r_sys"] = options_.divergence_penalty;
      meta["v_comm"] = slot.signal.v_comm;
      meta["v_min"] = slot.signal.v_min;
      meta["v_max"] = slot.signal.v_max;
      meta["v_vio"] = 0.0;
      meta["net_power_kw"] = slot.spec.env->real_power_kw();
      meta["pf_iterations"] = static_cast<double>(result.iterations);
      meta["pf_diverged"] = 1.0;
      out.metas[id] = std::move(meta);
    }
    out.dones["__all__"] = true;
    return out;
  }

  // 5: grid-coupled rewards and observation augmentation from this solve.
  fill_signals(result);

  std::map<std::string, double> r_sys;
  for (const auto& id : ids_) r_sys[id] = 0.0;
  double v_vio = 0.0;
  for (const auto& term : options_.system_rewards) {
    const double violation = system_violation(result, term);
    v_vio += violation;
    const double share = -term.weight * violation / static_cast<double>(term.agents.size());
    for (const auto& id : term.agents) r_sys[id] += share;
  }
  if (options_.system_rewards.empty()) {
    v_vio = pf::voltage_violation(pf::min_voltage(result), options_.band_lower,
                                  options_.band_upper) +
            pf::voltage_violation(pf::max_voltage(result), options_.band_lower,
                                  options_.band_upper);
  }

  bool all_done = true;
  for (auto& slot : slots_) {
    const auto& id = slot.spec.id;
    StepResult& r = results[id];
    const double reward = r.reward + r_sys[id];
    require_finite(reward, id + " reward");

    auto obs = observation_with_grid(r.observation, slot.signal,
                                     slot.spec.grid_obs.as_list());
    if (obs.size() != slot.augmented_obs_space.size())
      throw std::runtime_error(id + ": observation length does not match declared space");
    for (double v : obs) require_finite(v, id + " observation");

    const bool done = r.done || horizon_reached;
    all_done = all_done && done;

    auto meta = std::move(r.meta);
    meta["r_agent"] = r.reward;
    meta["r_sys"] = r_sys[id];
    meta["v_comm"] = slot.signal.v_comm;
    meta["v_min"] = slot.signal.v_min;
    meta["v_max"] = slot.signal.v_max;
    meta["v_vio"] = v_vio;
    meta["net_power_kw"] = slot.spec.env->real_power_kw();
    meta["pf_iterations"] = static_cast<double>(result.iterations);
    meta["pf_diverged"] = 0.0;
    for (const auto& [k, v] : meta) require_finite(v, id + " meta \"" + k + "\"");

    out.observations[id] = std::move(obs);
    out.rewards[id] = reward;
    out.dones[id] = done;
    out.metas[id] = std::move(meta);
  }
  out.dones["__all__"] = all_done || horizon_reached;
  episode_done_ = out.dones["__all__"];
  return out;
}

}  // namespace gridrl::env
