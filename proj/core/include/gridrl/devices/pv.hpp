#pragma once

#include <vector>

#include "gridrl/env/component_env.hpp"

namespace gridrl::dev {

struct PvParams {
  double rating_kw = 60.0;
};

// Curtailable PV. The action is the fraction of available power injected:
// injected = action * available, so action 0 is full curtailment. The
// component reward is zero; any voltage coupling is added at the system
// level after the power flow solve.
//
// Observation: [available_kw, injected_kw].
class PvArrayEnv final : public env::ComponentEnvBase {
 public:
  PvArrayEnv(std::string name, PvParams params, std::vector<double> available_kw,
             double dt_hours, int horizon);

  const env::Space& observation_space() const override { return obs_space_; }
  const env::Space& action_space() const override { return act_space_; }
  std::vector<double> reset(std::uint64_t seed) override;
  env::StepResult step(std::span<const double> action,
                       const env::GridSignal& grid) override;
  double real_power_kw() const override { return -injected_kw_; }

  double injected_kw() const { return injected_kw_; }

 private:
  double available_at(int step) const;
  std::vector<double> observe() const;

  PvParams params_;
  std::vector<double> available_;
  env::Space obs_space_;
  env::Space act_space_;
  double injected_kw_ = 0.0;
};

}  // namespace gridrl::dev
