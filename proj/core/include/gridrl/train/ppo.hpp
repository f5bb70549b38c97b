#pragma once

#include <functional>

#include "gridrl/env/multi_agent_env.hpp"
#include "gridrl/nn/adam.hpp"
#include "gridrl/nn/checkpoint.hpp"
#include "gridrl/nn/mlp.hpp"
#include "gridrl/train/metrics.hpp"
#include "gridrl/train/normalizer.hpp"
#include "gridrl/util/rng.hpp"

namespace gridrl::train {

struct PpoConfig {
  int iterations = 150;
  int episodes_per_iteration = 8;
  int epochs = 4;
  std::size_t minibatch_size = 256;
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_epsilon = 0.2;
  double value_coef = 0.5;
  double entropy_coef = 0.01;
  double lr_policy = 3e-4;
  double lr_value = 1e-3;
  std::vector<int> hidden = {64, 64};
  double initial_log_std = -0.7;
  double reward_scale = 1.0;
  int checkpoint_every = 0;
  std::uint64_t seed = 0;
};

// One on-policy sample. obs_unit is the normalized observation, action_u the
// pre-clamp Gaussian draw, old_logp its log-density under the
// collection-time policy.
struct PpoSample {
  std::vector<double> obs_unit;
  std::vector<double> action_u;
  double old_logp = 0.0;
  double advantage = 0.0;
  double return_target = 0.0;
};

struct PpoLossResult {
  double total = 0.0;
  double surrogate = 0.0;   // clipped-surrogate part (minimized)
  double value_mse = 0.0;
  double entropy = 0.0;
  int skipped = 0;          // samples dropped for non-finite ratios
  std::vector<double> mean_grad;
  std::vector<double> log_std_grad;
  std::vector<double> value_grad;
};

// Independent PPO: one diagonal-Gaussian policy (tanh mean head plus a
// state-independent log-std vector) and one value net per agent; no parameter
// sharing. Full episodes are collected each iteration, advantages come from
// GAE, and each agent runs its own epochs of clipped-surrogate minibatch
// updates. Value targets are the discounted rewards-to-go.
class PpoTrainer {
 public:
  PpoTrainer(env::MultiAgentEnvBase& env, PpoConfig config);

  TrainMetrics run_iteration();
  void train(const std::function<void(const TrainMetrics&)>& on_metrics = {},
             const std::function<void(int iteration)>& on_checkpoint = {});

  // Loss of one minibatch: clipped surrogate + value_coef * value MSE
  // - entropy_coef * entropy, with gradients for the three parameter blocks.
  // Advantages are consumed as given (normalize upstream).
  PpoLossResult loss(int agent, std::span<const PpoSample> batch);

  std::vector<double> act_mean(int agent, std::span<const double> raw_obs);

  int agent_count() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& agent_ids() const { return ids_; }
  nn::Mlp& policy_mean(int agent) { return mean_[agent]; }
  std::vector<double>& log_std(int agent) { return log_std_[agent]; }
  nn::Mlp& value_net(int agent) { return value_[agent]; }
  int iteration() const { return iteration_; }

  nn::Checkpoint checkpoint() const;

 private:
  struct AgentTrajectory {
    std::vector<PpoSample> samples;
    std::vector<double> rewards;
    std::vector<unsigned char> dones;
  };
  std::vector<AgentTrajectory> collect(int episodes, std::vector<double>& mean_return,
                                       double& mean_v_vio);

  env::MultiAgentEnvBase& env_;
  PpoConfig cfg_;
  std::vector<std::string> ids_;
  std::vector<BoxNormalizer> obs_norm_, act_norm_;
  std::vector<int> act_dims_;

  std::vector<nn::Mlp> mean_, value_;
  std::vector<std::vector<double>> log_std_;
  std::vector<nn::AdamState> mean_opt_, value_opt_, log_std_opt_;
  std::vector<Rng> action_rng_;  // one stream per agent
  Rng shuffle_rng_;
  std::uint64_t episode_counter_ = 0;
  int iteration_ = 0;

  nn::MlpWorkspace ws_;
};

}  // namespace gridrl::train
