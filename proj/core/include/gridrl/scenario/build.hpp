#pragma once

#include <memory>

#include "gridrl/scenario/config.hpp"

namespace gridrl::scenario {

// Instantiates the feeder, devices and agents described by a validated
// config. Each call returns an independent environment instance.
std::unique_ptr<env::GridMultiAgentEnv> build_environment(const ScenarioConfig& config);

pf::FeederModel build_feeder(const FeederConfig& config);

}  // namespace gridrl::scenario
