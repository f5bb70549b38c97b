#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "gridrl/env/space.hpp"
#include "gridrl/env/types.hpp"

namespace gridrl::env {

// Episodic device contract. Real power is in kW, consumption-positive
// (injection negative). An episode runs exactly `horizon` steps unless the
// env reports done earlier; stepping a done env is an error.
class ComponentEnv {
 public:
  virtual ~ComponentEnv() = default;

  virtual const std::string& name() const = 0;
  virtual const Space& observation_space() const = 0;
  virtual const Space& action_space() const = 0;
  virtual int horizon() const = 0;

  // Returns s0, which lies within observation_space. Identical seeds yield
  // identical observations.
  virtual std::vector<double> reset(std::uint64_t seed) = 0;

  // Advances one control step. The action must already be clamped to the
  // action space (see clamp_action); anything else fails fast.
  virtual StepResult step(std::span<const double> action, const GridSignal& grid) = 0;

  virtual double real_power_kw() const = 0;
  virtual double reactive_power_kvar() const { return 0.0; }
  virtual bool done() const = 0;
};

// Shared bookkeeping for concrete devices: name, step counter, horizon, and
// fail-fast action checks.
class ComponentEnvBase : public ComponentEnv {
 public:
  const std::string& name() const override { return name_; }
  int horizon() const override { return horizon_; }
  bool done() const override { return step_ >= horizon_; }

 protected:
  ComponentEnvBase(std::string name, int horizon)
      : name_(std::move(name)), horizon_(horizon) {
    if (name_.empty()) throw std::invalid_argument("component name must be non-empty");
    if (horizon_ <= 0) throw std::invalid_argument(name_ + ": horizon must be positive");
  }

  void check_step_preconditions(std::span<const double> action, const Space& space) const {
    if (done()) throw std::logic_error(name_ + ": step() called on a finished episode");
    if (action.size() != space.size())
      throw std::invalid_argument(name_ + ": action length mismatch");
    for (std::size_t k = 0; k < action.size(); ++k)
      if (!(action[k] >= space.low[k] && action[k] <= space.high[k]))
        throw std::invalid_argument(name_ + ": action out of bounds after clamping");
  }

  std::string name_;
  int horizon_;
  int step_ = 0;
};

}  // namespace gridrl::env
