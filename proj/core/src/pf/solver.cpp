#include "gridrl/pf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gridrl::pf {

RadialSweepSolver::RadialSweepSolver(double tolerance_pu, int max_iterations)
    : tol_(tolerance_pu), max_iter_(max_iterations) {
  if (!(tolerance_pu > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

PowerFlowResult RadialSweepSolver::solve(const FeederModel& feeder,
                                         const InjectionSet& injections) const {
  if (injections.feeder() != &feeder &&
      injections.feeder()->bus_ids() != feeder.bus_ids())
    throw std::invalid_argument("injection set was built for a different feeder");

  const std::size_t n = feeder.bus_count();
  const int slack = feeder.slack_index();
  const auto& order = feeder.sweep_order();
  const double base = feeder.base_power_kva();

  std::vector<std::complex<double>> s_pu(n);
  for (std::size_t i = 0; i < n; ++i) s_pu[i] = injections.s_kva()[i] / base;

  std::vector<std::complex<double>> v(n, {feeder.slack_voltage_pu(), 0.0});
  std::vector<std::complex<double>> branch(n);  // current on the line into bus i

  PowerFlowResult out;
  out.slack_index = slack;
  out.converged = false;

  for (int iter = 1; iter <= max_iter_; ++iter) {
    // Backward sweep: aggregate load currents up the tree.
    for (std::size_t i = 0; i < n; ++i)
      branch[i] = (static_cast<int>(i) == slack)
                      ? std::complex<double>{0.0, 0.0}
                      : std::conj(s_pu[i] / v[i]);
    for (std::size_t k = n; k-- > 1;) {
      const int bus = order[k];
      const int parent = feeder.parent_index(bus);
      if (parent != slack) branch[parent] += branch[bus];
    }

    // Forward sweep: propagate voltage drops down the tree.
    double max_delta = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const int bus = order[k];
      const std::complex<double> vn =
          v[feeder.parent_index(bus)] - feeder.line_impedance(bus) * branch[bus];
      max_delta = std::max(max_delta, std::abs(vn - v[bus]));
      v[bus] = vn;
    }

    out.iterations = iter;
    if (max_delta < tol_) {
      out.converged = true;
      break;
    }
  }

  out.v_mag_pu.resize(n);
  out.v_angle_rad.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.v_mag_pu[i] = std::abs(v[i]);
    out.v_angle_rad[i] = std::arg(v[i]);
  }

  double loss_pu = 0.0;
  std::complex<double> slack_current{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) == slack) continue;
    loss_pu += std::norm(branch[i]) * feeder.line_impedance(static_cast<int>(i)).real();
    if (feeder.parent_index(static_cast<int>(i)) == slack) slack_current += branch[i];
  }
  out.losses_kw = loss_pu * base;
  const std::complex<double> s_slack = v[slack] * std::conj(slack_current) * base;
  out.slack_p_kw = s_slack.real();
  out.slack_q_kvar = s_slack.imag();
  return out;
}

PowerFlowResult solve(const FeederModel& feeder, const InjectionSet& injections) {
  return RadialSweepSolver{}.solve(feeder, injections);
}

namespace {

void require_converged(const PowerFlowResult& r, const char* what) {
  if (!r.converged)
    throw std::invalid_argument(std::string(what) + " requires a converged power flow result");
}

}  // namespace

double min_voltage(const PowerFlowResult& result) {
  require_converged(result, "min_voltage");
  if (result.v_mag_pu.size() == 1) return result.v_mag_pu[0];
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < result.v_mag_pu.size(); ++i)
    if (static_cast<int>(i) != result.slack_index)
      m = std::min(m, result.v_mag_pu[i]);
  return m;
}

double max_voltage(const PowerFlowResult& result) {
  require_converged(result, "max_voltage");
  if (result.v_mag_pu.size() == 1) return result.v_mag_pu[0];
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < result.v_mag_pu.size(); ++i)
    if (static_cast<int>(i) != result.slack_index)
      m = std::max(m, result.v_mag_pu[i]);
  return m;
}

double voltage_violation(double v_pu, double v_lower, double v_upper) {
  return std::max(0.0, v_pu - v_upper) + std::max(0.0, v_lower - v_pu);
}

}  // namespace gridrl::pf
