#pragma once

#include <map>
#include <memory>
#include <optional>

#include "gridrl/env/component_env.hpp"
#include "gridrl/pf/solver.hpp"

namespace gridrl::env {

// Which grid fields get appended to an agent's raw observation, in the fixed
// order [v_comm, v_min, v_max].
struct GridObservationMask {
  bool v_comm = false;
  bool v_min = false;
  bool v_max = false;

  std::vector<bool> as_list() const { return {v_comm, v_min, v_max}; }
  int count() const { return int(v_comm) + int(v_min) + int(v_max); }
};

// Appends the masked grid fields (order: v_comm, v_min, v_max) to a raw
// observation. An empty mask returns the input unchanged. Mask length must
// not exceed the number of grid fields (3).
std::vector<double> observation_with_grid(std::span<const double> raw_obs,
                                          const GridSignal& signal,
                                          const std::vector<bool>& mask);

// One grid-coupled reward term. Each listed agent receives
// -weight * violation / agents.size() per step, where the monitored voltage
// is the named bus (BusVoltageViolation) or the feeder minimum
// (MinVoltageViolation).
struct SystemRewardTerm {
  enum class Kind { BusVoltageViolation, MinVoltageViolation };

  Kind kind = Kind::BusVoltageViolation;
  std::string bus;  // only for BusVoltageViolation
  double weight = 1000.0;
  double v_lower = 0.95;
  double v_upper = 1.05;
  std::vector<std::string> agents;
};

struct AgentSpec {
  std::string id;
  std::shared_ptr<ComponentEnv> env;
  std::string bus;
  GridObservationMask grid_obs;
};

// Multi-agent episodic contract (reset/step over agent-id keyed maps).
class MultiAgentEnvBase {
 public:
  virtual ~MultiAgentEnvBase() = default;

  virtual const std::vector<std::string>& agent_ids() const = 0;
  virtual const Space& observation_space(const std::string& id) const = 0;
  virtual const Space& action_space(const std::string& id) const = 0;
  virtual int horizon() const = 0;

  virtual std::map<std::string, std::vector<double>> reset(std::uint64_t seed) = 0;
  virtual MultiAgentStep step(
      const std::map<std::string, std::vector<double>>& actions) = 0;
};

// N agents on a radial feeder with a power flow solution folded into every
// control step. Step execution order is fixed:
//   1. clamp all actions to the agents' action spaces
//   2. step every agent's device dynamics (serially, sorted-id order)
//   3. aggregate agent powers with the base load profile for this step
//   4. solve the power flow
//   5. compute grid-coupled reward terms and append masked grid fields
//      (from the solve of this step) to the observations
//   6. return the MultiAgentStep
//
// Power flow divergence ends the episode: done for everyone, a fixed penalty
// added to every reward, and meta flag pf_diverged set.
class GridMultiAgentEnv final : public MultiAgentEnvBase {
 public:
  struct Options {
    std::vector<AgentSpec> agents;
    std::map<std::string, std::vector<double>> base_load_kw;  // bus -> series
    std::vector<SystemRewardTerm> system_rewards;
    int horizon = 288;
    double load_power_factor = 0.95;  // base-load reactive power model
    double divergence_penalty = -1000.0;
    double band_lower = 0.95;  // diagnostics band when no system term exists
    double band_upper = 1.05;
    std::shared_ptr<const pf::PowerFlowSolver> solver;  // default: radial sweep
  };

  GridMultiAgentEnv(pf::FeederModel feeder, Options options);

  const std::vector<std::string>& agent_ids() const override { return ids_; }
  const Space& observation_space(const std::string& id) const override;
  const Space& action_space(const std::string& id) const override;
  int horizon() const override { return options_.horizon; }

  // Resets every agent with seed ^ fnv1a64(agent id), solves the initial
  // power flow from base load plus initial device powers, and returns
  // grid-augmented observations. Throws if the initial solve diverges.
  std::map<std::string, std::vector<double>> reset(std::uint64_t seed) override;

  MultiAgentStep step(
      const std::map<std::string, std::vector<double>>& actions) override;

  const pf::FeederModel& feeder() const { return feeder_; }
  const GridSignal& last_signal(const std::string& id) const;
  int step_index() const { return step_; }
  bool episode_done() const { return episode_done_; }
  ComponentEnv& agent_env(const std::string& id);

 private:
  struct Slot {
    AgentSpec spec;
    int bus_index = -1;
    Space augmented_obs_space;
    GridSignal signal;
  };

  pf::PowerFlowResult solve_current(int load_step) const;
  double base_load_at(const std::string& bus, int step) const;
  void fill_signals(const pf::PowerFlowResult& result);
  double system_violation(const pf::PowerFlowResult& result,
                          const SystemRewardTerm& term) const;
  static void require_finite(double v, const std::string& what);

  pf::FeederModel feeder_;
  Options options_;
  std::vector<std::string> ids_;
  std::vector<Slot> slots_;  // sorted by agent id
  std::map<std::string, int> slot_index_;
  int step_ = 0;
  bool episode_done_ = true;  // until first reset
  double load_tan_phi_ = 0.0;
};

}  // namespace gridrl::env
