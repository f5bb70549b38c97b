#pragma once

#include <functional>

#include "gridrl/env/multi_agent_env.hpp"
#include "gridrl/nn/adam.hpp"
#include "gridrl/nn/checkpoint.hpp"
#include "gridrl/nn/mlp.hpp"
#include "gridrl/train/metrics.hpp"
#include "gridrl/train/normalizer.hpp"
#include "gridrl/train/transition.hpp"

namespace gridrl::train {

struct MaddpgConfig {
  int iterations = 300;
  int episodes_per_iteration = 10;
  int updates_per_iteration = 40;
  std::size_t batch_size = 256;
  std::size_t buffer_capacity = 100000;
  double gamma = 0.99;
  double tau = 0.01;
  double lr_actor = 1e-4;
  double lr_critic = 1e-3;
  std::vector<int> hidden = {64, 64};
  double noise_sigma_start = 0.3;
  double noise_sigma_end = 0.05;
  int noise_anneal_iterations = 200;
  double reward_scale = 1.0;  // applied inside the losses only
  int checkpoint_every = 0;   // 0 disables periodic checkpoints
  std::uint64_t seed = 0;
};

// Centralized-critic, decentralized-actor learner over the multi-agent env
// contract. Each agent i holds an actor over its own observation and a
// critic over the joint (observations, actions); targets are slow copies.
//
// Per iteration: collect episodes with annealed Gaussian exploration noise,
// push joint transitions, then run minibatch updates (critic, then actor,
// per agent in sorted-id order; one soft target update per minibatch).
// Everything is driven by the constructor seed; identical (env, config)
// pairs reproduce identical metric streams.
class MaddpgTrainer {
 public:
  MaddpgTrainer(env::MultiAgentEnvBase& env, MaddpgConfig config);

  TrainMetrics run_iteration();
  void train(const std::function<void(const TrainMetrics&)>& on_metrics = {},
             const std::function<void(int iteration)>& on_checkpoint = {});

  struct LossResult {
    double value = 0.0;
    std::vector<double> gradient;
  };

  // Mean squared Bellman error of agent i's critic over a batch; the target
  // (reward + gamma * target critic at target-actor actions) is a constant
  // within the evaluation. Gradient is w.r.t. the online critic parameters.
  LossResult critic_loss(int agent, std::span<const Transition* const> batch);

  // -mean Q_i(s, [a_1.., mu_i(s_i), .., a_n]); other agents' actions come
  // from the batch. Gradient flows through the critic input into the actor.
  LossResult actor_loss(int agent, std::span<const Transition* const> batch);

  // Deterministic env-scale action of one agent (no exploration noise).
  std::vector<double> act(int agent, std::span<const double> raw_obs);

  int agent_count() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& agent_ids() const { return ids_; }
  nn::Mlp& actor(int agent) { return actors_[agent]; }
  nn::Mlp& critic(int agent) { return critics_[agent]; }
  nn::Mlp& target_actor(int agent) { return target_actors_[agent]; }
  nn::Mlp& target_critic(int agent) { return target_critics_[agent]; }
  ReplayBuffer& buffer() { return buffer_; }
  int iteration() const { return iteration_; }
  double noise_sigma(int iteration) const;

  nn::Checkpoint checkpoint() const;

 private:
  struct CollectStats {
    std::vector<double> mean_return;  // per agent
    double mean_v_vio = 0.0;
  };
  CollectStats collect_episodes(int count);
  void update_once(double& critic_loss_acc, double& actor_loss_acc);
  // [norm(obs_1).., norm(obs_n), act_1.., act_n] into out (size joint_dim_).
  void fill_joint(const std::vector<std::vector<double>>& raw_obs,
                  const std::vector<std::vector<double>>& unit_actions,
                  std::vector<double>& out) const;

  env::MultiAgentEnvBase& env_;
  MaddpgConfig cfg_;
  std::vector<std::string> ids_;
  std::vector<BoxNormalizer> obs_norm_;
  std::vector<BoxNormalizer> act_norm_;
  std::vector<int> obs_dims_, act_dims_;
  int joint_dim_ = 0;

  std::vector<nn::Mlp> actors_, critics_, target_actors_, target_critics_;
  std::vector<nn::AdamState> actor_opt_, critic_opt_;

  ReplayBuffer buffer_;
  Rng noise_rng_;
  std::uint64_t episode_counter_ = 0;
  int iteration_ = 0;

  nn::MlpWorkspace ws_a_, ws_b_;
};

}  // namespace gridrl::train
