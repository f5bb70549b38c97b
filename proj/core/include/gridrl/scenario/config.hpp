#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gridrl/devices/building.hpp"
#include "gridrl/devices/ev_station.hpp"
#include "gridrl/devices/pv.hpp"
#include "gridrl/devices/reward_weights.hpp"
#include "gridrl/devices/storage.hpp"
#include "gridrl/env/multi_agent_env.hpp"
#include "gridrl/train/maddpg.hpp"
#include "gridrl/train/ppo.hpp"

namespace gridrl::scenario {

// Reference to an exogenous profile CSV; values are multiplied by scale.
struct ProfileRef {
  std::string path;  // relative to the scenario file's directory
  double scale = 1.0;
};

struct BuildingComponentConfig {
  std::string name;
  dev::BuildingParams params;
  ProfileRef ambient;
};

struct PvComponentConfig {
  std::string name;
  dev::PvParams params;
  ProfileRef available;
};

struct StorageComponentConfig {
  std::string name;
  dev::StorageParams params;
};

struct EvComponentConfig {
  std::string name;
  dev::EvStationParams params;
};

using ComponentConfig = std::variant<BuildingComponentConfig, PvComponentConfig,
                                     StorageComponentConfig, EvComponentConfig>;

const std::string& component_name(const ComponentConfig& c);

struct AgentConfig {
  std::string id;
  std::string bus;
  env::GridObservationMask grid_obs;
  std::vector<ComponentConfig> components;
};

struct BusConfig {
  std::string id;
  std::optional<std::string> parent;  // absent -> slack
  double r_pu = 0.0;
  double x_pu = 0.0;
  std::optional<ProfileRef> base_load;
};

struct FeederConfig {
  double base_power_kva = 1000.0;
  double base_voltage_kv = 4.16;
  double slack_voltage_pu = 1.0;
  std::vector<BusConfig> buses;
};

struct TrainerConfig {
  std::string algorithm;  // "maddpg" | "ppo"
  train::MaddpgConfig maddpg;
  train::PpoConfig ppo;
};

// Fully validated scenario: cross-references resolved, defaults filled.
struct ScenarioConfig {
  std::string name;
  std::uint64_t seed = 0;
  int horizon = 288;
  double dt_minutes = 5.0;
  double band_lower = 0.95;
  double band_upper = 1.05;
  double load_power_factor = 0.95;
  double divergence_penalty = -1000.0;
  dev::RewardWeights reward_weights;
  FeederConfig feeder;
  std::vector<AgentConfig> agents;
  std::vector<env::SystemRewardTerm> system_rewards;
  TrainerConfig trainer;
  std::filesystem::path base_dir;  // directory profile paths resolve against

  double dt_hours() const { return dt_minutes / 60.0; }
};

// Parses and validates a scenario file (JSON; // comments allowed). Every
// error message is qualified with the file path and config field.
ScenarioConfig load_scenario(const std::filesystem::path& path);

// Canonical form of a loaded config: every default made explicit, keys
// sorted, stable float formatting. load(dump(x)) == dump(x).
std::string normalized_dump(const ScenarioConfig& config);

}  // namespace gridrl::scenario
