#pragma once

#include <memory>
#include <vector>

#include "gridrl/env/component_env.hpp"

namespace gridrl::env {

// Composition of component envs into one agent. Observation and action
// spaces are the concatenation of the component spaces (in roster order),
// reward and electrical power are the sums over components.
//
// On reset, component c receives seed ^ fnv1a64(c.name()) so heterogeneous
// components draw decorrelated streams while the composite stays
// reproducible.
class MultiComponentEnv final : public ComponentEnv {
 public:
  MultiComponentEnv(std::string name,
                    std::vector<std::shared_ptr<ComponentEnv>> components);

  const std::string& name() const override { return name_; }
  const Space& observation_space() const override { return obs_space_; }
  const Space& action_space() const override { return act_space_; }
  int horizon() const override;

  std::vector<double> reset(std::uint64_t seed) override;
  StepResult step(std::span<const double> action, const GridSignal& grid) override;

  double real_power_kw() const override;
  double reactive_power_kvar() const override;
  bool done() const override;

  const std::vector<std::shared_ptr<ComponentEnv>>& components() const {
    return components_;
  }

 private:
  std::string name_;
  std::vector<std::shared_ptr<ComponentEnv>> components_;
  Space obs_space_;
  Space act_space_;
};

std::shared_ptr<ComponentEnv> compose_multi_component(
    std::string name, std::vector<std::shared_ptr<ComponentEnv>> components);

}  // namespace gridrl::env
