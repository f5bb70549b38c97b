#pragma once

#include <map>
#include <string>
#include <vector>

namespace gridrl::env {

// Voltage summary handed to agents after every power flow solve.
// v_comm is the voltage at the agent's own bus; v_min/v_max range over the
// non-slack buses of the feeder.
struct GridSignal {
  double v_comm = 1.0;
  double v_min = 1.0;
  double v_max = 1.0;
};

struct StepResult {
  std::vector<double> observation;
  double reward = 0.0;
  bool done = false;
  std::map<std::string, double> meta;
};

// One multi-agent control step. `dones` carries one entry per agent plus the
// global "__all__" flag, true iff every agent is done or the horizon was hit.
struct MultiAgentStep {
  std::map<std::string, std::vector<double>> observations;
  std::map<std::string, double> rewards;
  std::map<std::string, bool> dones;
  std::map<std::string, std::map<std::string, double>> metas;

  bool all_done() const {
    const auto it = dones.find("__all__");
    return it != dones.end() && it->second;
  }
};

}  // namespace gridrl::env
