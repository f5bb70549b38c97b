#pragma once

#include <stdexcept>

namespace gridrl::dev {

// Scenario-wide reward weighting. Devices pick the fields they use: buildings
// take the comfort/energy weights and band, the EV station takes the unmet
// and peak terms, and lambda scales the system-level voltage penalty.
struct RewardWeights {
  double comfort_weight = 0.05;      // per zone (degC past band)^2 per step
  double energy_weight = 0.01;       // per kWh consumed
  double comfort_low_c = 20.0;
  double comfort_high_c = 24.0;
  double lambda = 1000.0;            // system voltage penalty scale
  double peak_threshold_kw = 20.0;
  double unmet_weight = 1.0;         // per kWh unmet at departure
  double peak_weight = 0.1;          // per kW above the threshold per step

  void validate() const {
    if (comfort_weight < 0 || energy_weight < 0 || lambda < 0 ||
        unmet_weight < 0 || peak_weight < 0)
      throw std::invalid_argument("reward weights must be non-negative");
    if (!(comfort_low_c < comfort_high_c))
      throw std::invalid_argument("comfort band must satisfy low < high");
  }
};

}  // namespace gridrl::dev
