#pragma once

#include "gridrl/pf/feeder.hpp"

namespace gridrl::pf {

struct PowerFlowResult {
  std::vector<double> v_mag_pu;    // canonical bus order (FeederModel::bus_ids)
  std::vector<double> v_angle_rad;
  double losses_kw = 0.0;
  double slack_p_kw = 0.0;
  double slack_q_kvar = 0.0;
  int iterations = 0;
  bool converged = false;
  int slack_index = 0;
};

// Solver boundary: anything that maps (feeder, injections) to a bus voltage
// solution can be swapped in behind this interface.
class PowerFlowSolver {
 public:
  virtual ~PowerFlowSolver() = default;
  virtual PowerFlowResult solve(const FeederModel& feeder,
                                const InjectionSet& injections) const = 0;
};

// Backward/forward sweep for radial feeders with constant-power injections.
// Iterates until max |dV| between sweeps < tolerance or max_iterations is
// reached; non-convergence is reported via the converged flag, not thrown.
class RadialSweepSolver final : public PowerFlowSolver {
 public:
  explicit RadialSweepSolver(double tolerance_pu = 1e-8, int max_iterations = 50);
  PowerFlowResult solve(const FeederModel& feeder,
                        const InjectionSet& injections) const override;

 private:
  double tol_;
  int max_iter_;
};

// Convenience: solve with a default-configured RadialSweepSolver.
PowerFlowResult solve(const FeederModel& feeder, const InjectionSet& injections);

// Minimum / maximum voltage magnitude over non-slack buses. Throws
// std::invalid_argument on an unconverged result.
double min_voltage(const PowerFlowResult& result);
double max_voltage(const PowerFlowResult& result);

// max(0, v - v_upper) + max(0, v_lower - v); zero inside the band.
double voltage_violation(double v_pu, double v_lower, double v_upper);

}  // namespace gridrl::pf
