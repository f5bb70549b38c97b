#include "gridrl/train/maddpg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridrl::train {

namespace {

std::vector<int> actor_sizes(int obs, const std::vector<int>& hidden, int act) {
  std::vector<int> s;
  s.push_back(obs);
  s.insert(s.end(), hidden.begin(), hidden.end());
  s.push_back(act);
  return s;
}

}  // namespace

MaddpgTrainer::MaddpgTrainer(env::MultiAgentEnvBase& env, MaddpgConfig config)
    : env_(env),
      cfg_(std::move(config)),
      ids_(env.agent_ids()),
      buffer_(cfg_.buffer_capacity, mix_seed(cfg_.seed, fnv1a64("replay"))),
      noise_rng_(mix_seed(cfg_.seed, fnv1a64("noise"))) {
  if (ids_.empty()) throw std::invalid_argument("maddpg: env has no agents");
  if (cfg_.batch_size == 0) throw std::invalid_argument("maddpg: batch size must be > 0");
  if (!(cfg_.gamma >= 0.0 && cfg_.gamma <= 1.0))
    throw std::invalid_argument("maddpg: gamma must be in [0, 1]");
  if (!(cfg_.tau > 0.0 && cfg_.tau <= 1.0))
    throw std::invalid_argument("maddpg: tau must be in (0, 1]");

  int obs_total = 0, act_total = 0;
  for (const auto& id : ids_) {
    const env::Space& os = env_.observation_space(id);
    const env::Space& as = env_.action_space(id);
    obs_norm_.emplace_back(os);
    act_norm_.emplace_back(as);
    obs_dims_.push_back(static_cast<int>(os.size()));
    act_dims_.push_back(static_cast<int>(as.size()));
    obs_total += static_cast<int>(os.size());
    act_total += static_cast<int>(as.size());
  }
  joint_dim_ = obs_total + act_total;

  for (std::size_t i = 0; i < ids_.size(); ++i) {
    const auto a_sizes = actor_sizes(obs_dims_[i], cfg_.hidden, act_dims_[i]);
    const auto c_sizes = actor_sizes(joint_dim_, cfg_.hidden, 1);
    actors_.push_back(nn::Mlp::create(a_sizes, nn::Activation::Tanh,
                                      mix_seed(cfg_.seed, fnv1a64(ids_[i] + ".actor"))));
    critics_.push_back(nn::Mlp::create(c_sizes, nn::Activation::Identity,
                                       mix_seed(cfg_.seed, fnv1a64(ids_[i] + ".critic"))));
    target_actors_.push_back(actors_.back());
    target_critics_.push_back(critics_.back());
    actor_opt_.push_back(nn::AdamState::create(actors_.back().param_count(), cfg_.lr_actor));
    critic_opt_.push_back(nn::AdamState::create(critics_.back().param_count(), cfg_.lr_critic));
  }
}

double MaddpgTrainer::noise_sigma(int iteration) const {
  if (cfg_.noise_anneal_iterations <= 0) return cfg_.noise_sigma_end;
  const double f = std::min(1.0, static_cast<double>(iteration) /
                                     cfg_.noise_anneal_iterations);
  return cfg_.noise_sigma_start + f * (cfg_.noise_sigma_end - cfg_.noise_sigma_start);
}

std::vector<double> MaddpgTrainer::act(int agent, std::span<const double> raw_obs) {
  const auto unit = obs_norm_[agent].to_unit(raw_obs);
  nn::forward(actors_[agent], unit, ws_a_);
  return act_norm_[agent].from_unit(ws_a_.act.back());
}

MaddpgTrainer::CollectStats MaddpgTrainer::collect_episodes(int count) {
  CollectStats stats;
  stats.mean_return.assign(ids_.size(), 0.0);
  const double sigma = noise_sigma(iteration_);

  for (int ep = 0; ep < count; ++ep) {
    auto obs = env_.reset(mix_seed(cfg_.seed, 0x10000000ull + episode_counter_));
    episode_counter_ += 1;

    double v_vio = 0.0;
    bool done = false;
    while (!done) {
      Transition t;
      t.obs.reserve(ids_.size());
      t.actions.reserve(ids_.size());
      std::map<std::string, std::vector<double>> env_actions;
      for (std::size_t i = 0; i < ids_.size(); ++i) {
        const auto& raw = obs.at(ids_[i]);
        const auto unit = obs_norm_[i].to_unit(raw);
        nn::forward(actors_[i], unit, ws_a_);
        std::vector<double> a = ws_a_.act.back();
        for (double& x : a)
          x = std::clamp(x + sigma * noise_rng_.normal(), -1.0, 1.0);
        env_actions[ids_[i]] = act_norm_[i].from_unit(a);
        t.obs.push_back(raw);
        t.actions.push_back(std::move(a));
      }

      const env::MultiAgentStep step = env_.step(env_actions);
      t.rewards.reserve(ids_.size());
      t.next_obs.reserve(ids_.size());
      for (std::size_t i = 0; i < ids_.size(); ++i) {
        t.rewards.push_back(step.rewards.at(ids_[i]));
        t.next_obs.push_back(step.observations.at(ids_[i]));
        stats.mean_return[i] += step.rewards.at(ids_[i]);
      }
      t.done = step.all_done();
      done = t.done;
      v_vio += step.metas.begin()->second.at("v_vio");

      obs = step.observations;
      buffer_.push(std::move(t));
    }
    stats.mean_v_vio += v_vio;
  }

  for (double& r : stats.mean_return) r /= count;
  stats.mean_v_vio /= count;
  return stats;
}

void MaddpgTrainer::fill_joint(const std::vector<std::vector<double>>& raw_obs,
                               const std::vector<std::vector<double>>& unit_actions,
                               std::vector<double>& out) const {
  out.clear();
  out.reserve(joint_dim_);
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    const auto unit = obs_norm_[i].to_unit(raw_obs[i]);
    out.insert(out.end(), unit.begin(), unit.end());
  }
  for (const auto& a : unit_actions) out.insert(out.end(), a.begin(), a.end());
}

MaddpgTrainer::LossResult MaddpgTrainer::critic_loss(
    int agent, std::span<const Transition* const> batch) {
  if (batch.empty()) throw std::invalid_argument("critic_loss: empty batch");
  const double inv_b = 1.0 / static_cast<double>(batch.size());

  LossResult out;
  out.gradient.assign(critics_[agent].param_count(), 0.0);

  std::vector<double> joint;
  std::vector<std::vector<double>> next_actions(ids_.size());
  for (const Transition* t : batch) {
    // Target joint action at s' from the target actors.
    for (std::size_t j = 0; j < ids_.size(); ++j) {
      const auto unit = obs_norm_[j].to_unit(t->next_obs[j]);
      nn::forward(target_actors_[j], unit, ws_a_);
      next_actions[j] = ws_a_.act.back();
    }
    fill_joint(t->next_obs, next_actions, joint);
    nn::forward(target_critics_[agent], joint, ws_a_);
    const double q_next = ws_a_.act.back()[0];
    const double not_done = t->done ? 0.0 : 1.0;
    const double y =
        cfg_.reward_scale * t->rewards[agent] + cfg_.gamma * not_done * q_next;

    fill_joint(t->obs, t->actions, joint);
    nn::forward(critics_[agent], joint, ws_b_);
    const double err = ws_b_.act.back()[0] - y;
    out.value += err * err * inv_b;

    const double upstream[1] = {2.0 * err * inv_b};
    nn::backward_accumulate(critics_[agent], ws_b_, upstream, out.gradient, {});
  }
  if (!std::isfinite(out.value))
    throw std::runtime_error("maddpg: non-finite critic loss");
  return out;
}

MaddpgTrainer::LossResult MaddpgTrainer::actor_loss(
    int agent, std::span<const Transition* const> batch) {
  if (batch.empty()) throw std::invalid_argument("actor_loss: empty batch");
  const double inv_b = 1.0 / static_cast<double>(batch.size());

  LossResult out;
  out.gradient.assign(actors_[agent].param_count(), 0.0);

  // Offset of agent's action slice inside the critic input.
  int action_offset = 0;
  for (int d : obs_dims_) action_offset += d;
  for (int j = 0; j < agent; ++j) action_offset += act_dims_[j];

  std::vector<double> joint;
  std::vector<double> critic_input_grad(joint_dim_, 0.0);
  std::vector<double> critic_scratch(critics_[agent].param_count(), 0.0);
  std::vector<std::vector<double>> actions(ids_.size());
  for (const Transition* t : batch) {
    const auto unit_obs = obs_norm_[agent].to_unit(t->obs[agent]);
    nn::forward(actors_[agent], unit_obs, ws_a_);
    for (std::size_t j = 0; j < ids_.size(); ++j) actions[j] = t->actions[j];
    actions[agent] = ws_a_.act.back();

    fill_joint(t->obs, actions, joint);
    nn::forward(critics_[agent], joint, ws_b_);
    out.value -= ws_b_.act.back()[0] * inv_b;

    // d(-q)/d(critic input), then route the agent's action slice into the
    // actor. The critic parameter gradient is discarded.
    const double upstream[1] = {-inv_b};
    std::fill(critic_scratch.begin(), critic_scratch.end(), 0.0);
    nn::backward_accumulate(critics_[agent], ws_b_, upstream, critic_scratch,
                            critic_input_grad);
    nn::backward_accumulate(
        actors_[agent], ws_a_,
        std::span<const double>(critic_input_grad.data() + action_offset,
                                static_cast<std::size_t>(act_dims_[agent])),
        out.gradient, {});
  }
  if (!std::isfinite(out.value))
    throw std::runtime_error("maddpg: non-finite actor loss");
  return out;
}

void MaddpgTrainer::update_once(double& critic_loss_acc, double& actor_loss_acc) {
  const auto batch = buffer_.sample(cfg_.batch_size);
  const std::span<const Transition* const> view(batch);
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    const LossResult cl = critic_loss(static_cast<int>(i), view);
    nn::adam_update(critics_[i].params, cl.gradient, critic_opt_[i]);
    const LossResult al = actor_loss(static_cast<int>(i), view);
    nn::adam_update(actors_[i].params, al.gradient, actor_opt_[i]);
    critic_loss_acc += cl.value;
    actor_loss_acc += al.value;
  }
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    nn::soft_update(target_critics_[i].params, critics_[i].params, cfg_.tau);
    nn::soft_update(target_actors_[i].params, actors_[i].params, cfg_.tau);
  }
}

TrainMetrics MaddpgTrainer::run_iteration() {
  const CollectStats stats = collect_episodes(cfg_.episodes_per_iteration);

  double critic_acc = 0.0, actor_acc = 0.0;
  int updates_done = 0;
  if (buffer_.size() >= cfg_.batch_size) {
    for (int u = 0; u < cfg_.updates_per_iteration; ++u)
      update_once(critic_acc, actor_acc);
    updates_done = cfg_.updates_per_iteration;
  }

  TrainMetrics m;
  m.iteration = iteration_;
  double total = 0.0;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    m.episode_return[ids_[i]] = stats.mean_return[i];
    total += stats.mean_return[i];
  }
  m.total_return = total;
  const double denom = std::max(1, updates_done) * static_cast<double>(ids_.size());
  m.critic_loss = critic_acc / denom;
  m.actor_loss = actor_acc / denom;
  m.v_vio = stats.mean_v_vio;
  m.extra["noise_sigma"] = noise_sigma(iteration_);
  m.extra["buffer_size"] = static_cast<double>(buffer_.size());
  m.extra["updates"] = static_cast<double>(updates_done);
  iteration_ += 1;
  return m;
}

void MaddpgTrainer::train(const std::function<void(const TrainMetrics&)>& on_metrics,
                          const std::function<void(int)>& on_checkpoint) {
  for (int it = 0; it < cfg_.iterations; ++it) {
    const TrainMetrics m = run_iteration();
    if (!std::isfinite(m.total_return) || !std::isfinite(m.critic_loss) ||
        !std::isfinite(m.actor_loss))
      throw std::runtime_error("maddpg: non-finite metrics at iteration " +
                               std::to_string(m.iteration));
    if (on_metrics) on_metrics(m);
    const bool last = (it + 1 == cfg_.iterations);
    if (on_checkpoint && cfg_.checkpoint_every > 0 &&
        ((it + 1) % cfg_.checkpoint_every == 0 || last))
      on_checkpoint(m.iteration);
    else if (on_checkpoint && last)
      on_checkpoint(m.iteration);
  }
}

nn::Checkpoint MaddpgTrainer::checkpoint() const {
  nn::Checkpoint ckpt;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    ckpt.emplace_back("maddpg." + ids_[i] + ".actor", nn::to_entry(actors_[i]));
    ckpt.emplace_back("maddpg." + ids_[i] + ".critic", nn::to_entry(critics_[i]));
    ckpt.emplace_back("maddpg." + ids_[i] + ".target_actor",
                      nn::to_entry(target_actors_[i]));
    ckpt.emplace_back("maddpg." + ids_[i] + ".target_critic",
                      nn::to_entry(target_critics_[i]));
  }
  return ckpt;
}

}  // namespace gridrl::train
