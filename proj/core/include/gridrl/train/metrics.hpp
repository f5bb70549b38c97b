#pragma once

#include <map>
#include <string>

namespace gridrl::train {

// One training iteration's summary, emitted as a JSON line to metrics.jsonl.
// MADDPG fills critic_loss/actor_loss (averaged over agents and updates);
// PPO fills ppo_loss (total objective) plus actor_loss (clipped surrogate)
// and critic_loss (value MSE). v_vio is the mean episodic voltage violation
// sum over the episodes collected this iteration.
struct TrainMetrics {
  int iteration = 0;
  std::map<std::string, double> episode_return;
  double total_return = 0.0;
  double critic_loss = 0.0;
  double actor_loss = 0.0;
  double ppo_loss = 0.0;
  double v_vio = 0.0;
  std::map<std::string, double> extra;
};

std::string to_json_line(const TrainMetrics& m);

}  // namespace gridrl::train
