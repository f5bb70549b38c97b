#include "gridrl/train/metrics.hpp"

#include <json.hpp>

namespace gridrl::train {

std::string to_json_line(const TrainMetrics& m) {
  nlohmann::json j;
  j["iteration"] = m.iteration;
  j["returns"] = m.episode_return;
  j["total_return"] = m.total_return;
  j["l_critic"] = m.critic_loss;
  j["l_actor"] = m.actor_loss;
  j["l_ppo"] = m.ppo_loss;
  j["v_vio"] = m.v_vio;
  j["extra"] = m.extra;
  return j.dump();
}

}  // namespace gridrl::train
