#include "gridrl/train/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gridrl/train/gae.hpp"

namespace gridrl::train {

namespace {

constexpr double kHalfLog2Pi = 0.9189385332046727;  // 0.5 * ln(2*pi)

std::vector<int> net_sizes(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> s;
  s.push_back(in);
  s.insert(s.end(), hidden.begin(), hidden.end());
  s.push_back(out);
  return s;
}

}  // namespace

PpoTrainer::PpoTrainer(env::MultiAgentEnvBase& env, PpoConfig config)
    : env_(env),
      cfg_(std::move(config)),
      ids_(env.agent_ids()),
      shuffle_rng_(mix_seed(cfg_.seed, fnv1a64("shuffle"))) {
  if (ids_.empty()) throw std::invalid_argument("ppo: env has no agents");
  if (!(cfg_.clip_epsilon >= 0.0 && cfg_.clip_epsilon < 1.0))
    throw std::invalid_argument("ppo: clip epsilon must be in [0, 1)");
  if (!(cfg_.gamma >= 0.0 && cfg_.gamma <= 1.0))
    throw std::invalid_argument("ppo: gamma must be in [0, 1]");
  if (cfg_.minibatch_size == 0)
    throw std::invalid_argument("ppo: minibatch size must be > 0");

  for (const auto& id : ids_) {
    const env::Space& os = env_.observation_space(id);
    const env::Space& as = env_.action_space(id);
    obs_norm_.emplace_back(os);
    act_norm_.emplace_back(as);
    act_dims_.push_back(static_cast<int>(as.size()));

    mean_.push_back(nn::Mlp::create(
        net_sizes(static_cast<int>(os.size()), cfg_.hidden, static_cast<int>(as.size())),
        nn::Activation::Tanh, mix_seed(cfg_.seed, fnv1a64(id + ".policy"))));
    value_.push_back(nn::Mlp::create(
        net_sizes(static_cast<int>(os.size()), cfg_.hidden, 1), nn::Activation::Identity,
        mix_seed(cfg_.seed, fnv1a64(id + ".value"))));
    log_std_.emplace_back(as.size(), cfg_.initial_log_std);

    mean_opt_.push_back(nn::AdamState::create(mean_.back().param_count(), cfg_.lr_policy));
    value_opt_.push_back(nn::AdamState::create(value_.back().param_count(), cfg_.lr_value));
    log_std_opt_.push_back(nn::AdamState::create(as.size(), cfg_.lr_policy));
    action_rng_.emplace_back(mix_seed(cfg_.seed, fnv1a64(id + ".sampling")));
  }
}

std::vector<double> PpoTrainer::act_mean(int agent, std::span<const double> raw_obs) {
  const auto unit = obs_norm_[agent].to_unit(raw_obs);
  nn::forward(mean_[agent], unit, ws_);
  std::vector<double> u = ws_.act.back();
  for (double& x : u) x = std::clamp(x, -1.0, 1.0);
  return act_norm_[agent].from_unit(u);
}

std::vector<PpoTrainer::AgentTrajectory> PpoTrainer::collect(
    int episodes, std::vector<double>& mean_return, double& mean_v_vio) {
  std::vector<AgentTrajectory> trajs(ids_.size());
  mean_return.assign(ids_.size(), 0.0);
  mean_v_vio = 0.0;

  for (int ep = 0; ep < episodes; ++ep) {
    auto obs = env_.reset(mix_seed(cfg_.seed, 0x20000000ull + episode_counter_));
    episode_counter_ += 1;

    bool done = false;
    double v_vio = 0.0;
    while (!done) {
      std::map<std::string, std::vector<double>> env_actions;
      for (std::size_t i = 0; i < ids_.size(); ++i) {
        PpoSample s;
        s.obs_unit = obs_norm_[i].to_unit(obs.at(ids_[i]));
        nn::forward(mean_[i], s.obs_unit, ws_);
        const std::vector<double>& m = ws_.act.back();

        s.action_u.resize(act_dims_[i]);
        s.old_logp = 0.0;
        std::vector<double> clipped(act_dims_[i]);
        for (int d = 0; d < act_dims_[i]; ++d) {
          const double sigma = std::exp(log_std_[i][d]);
          const double u = m[d] + sigma * action_rng_[i].normal();
          s.action_u[d] = u;
          const double z = (u - m[d]) / sigma;
          s.old_logp += -0.5 * z * z - log_std_[i][d] - kHalfLog2Pi;
          clipped[d] = std::clamp(u, -1.0, 1.0);
        }
        env_actions[ids_[i]] = act_norm_[i].from_unit(clipped);
        trajs[i].samples.push_back(std::move(s));
      }

      const env::MultiAgentStep step = env_.step(env_actions);
      for (std::size_t i = 0; i < ids_.size(); ++i) {
        trajs[i].rewards.push_back(cfg_.reward_scale * step.rewards.at(ids_[i]));
        trajs[i].dones.push_back(step.all_done() ? 1 : 0);
        mean_return[i] += step.rewards.at(ids_[i]);
      }
      v_vio += step.metas.begin()->second.at("v_vio");
      done = step.all_done();
      obs = step.observations;
    }
    mean_v_vio += v_vio;
  }

  for (double& r : mean_return) r /= episodes;
  mean_v_vio /= episodes;
  return trajs;
}

PpoLossResult PpoTrainer::loss(int agent, std::span<const PpoSample> batch) {
  if (batch.empty()) throw std::invalid_argument("ppo loss: empty batch");

  PpoLossResult out;
  out.mean_grad.assign(mean_[agent].param_count(), 0.0);
  out.log_std_grad.assign(log_std_[agent].size(), 0.0);
  out.value_grad.assign(value_[agent].param_count(), 0.0);

  const double eps = cfg_.clip_epsilon;
  const int act_dim = act_dims_[agent];
  std::vector<double> upstream(act_dim);
  const double inv_b = 1.0 / static_cast<double>(batch.size());

  for (const PpoSample& s : batch) {
    nn::forward(mean_[agent], s.obs_unit, ws_);
    const std::vector<double>& m = ws_.act.back();

    double logp = 0.0;
    for (int d = 0; d < act_dim; ++d) {
      const double sigma = std::exp(log_std_[agent][d]);
      const double z = (s.action_u[d] - m[d]) / sigma;
      logp += -0.5 * z * z - log_std_[agent][d] - kHalfLog2Pi;
    }
    const double ratio = std::exp(logp - s.old_logp);
    if (!std::isfinite(ratio)) {
      out.skipped += 1;
      continue;
    }

    const double adv = s.advantage;
    const double unclipped = ratio * adv;
    const double clipped = std::clamp(ratio, 1.0 - eps, 1.0 + eps) * adv;
    const bool use_unclipped = unclipped <= clipped;
    out.surrogate += -std::min(unclipped, clipped) * inv_b;

    //   d(-min)/d(ratio): adv when the unclipped branch is active, adv inside
    //   the clip band otherwise, zero when saturated.
    double dratio = 0.0;
    if (use_unclipped)
      dratio = -adv * inv_b;
    else if (ratio > 1.0 - eps && ratio < 1.0 + eps)
      dratio = -adv * inv_b;
    const double dlogp = dratio * ratio;

    if (dlogp != 0.0) {
      for (int d = 0; d < act_dim; ++d) {
        const double sigma = std::exp(log_std_[agent][d]);
        const double diff = s.action_u[d] - m[d];
        upstream[d] = dlogp * diff / (sigma * sigma);
        out.log_std_grad[d] += dlogp * (diff * diff / (sigma * sigma) - 1.0);
      }
      nn::backward_accumulate(mean_[agent], ws_, upstream, out.mean_grad, {});
    }

    nn::forward(value_[agent], s.obs_unit, ws_);
    const double v = ws_.act.back()[0];
    const double verr = v - s.return_target;
    out.value_mse += verr * verr * inv_b;
    const double v_up[1] = {cfg_.value_coef * 2.0 * verr * inv_b};
    nn::backward_accumulate(value_[agent], ws_, v_up, out.value_grad, {});
  }

  // Entropy of a diagonal Gaussian is state independent.
  double entropy = 0.0;
  for (int d = 0; d < act_dim; ++d)
    entropy += log_std_[agent][d] + 0.5 * (1.0 + std::log(2.0 * std::numbers::pi));
  out.entropy = entropy;
  for (int d = 0; d < act_dim; ++d) out.log_std_grad[d] -= cfg_.entropy_coef;

  out.total = out.surrogate + cfg_.value_coef * out.value_mse -
              cfg_.entropy_coef * out.entropy;
  if (!std::isfinite(out.total)) throw std::runtime_error("ppo: non-finite loss");
  return out;
}

TrainMetrics PpoTrainer::run_iteration() {
  std::vector<double> mean_return;
  double mean_v_vio = 0.0;
  auto trajs = collect(cfg_.episodes_per_iteration, mean_return, mean_v_vio);

  double total_loss = 0.0, total_surr = 0.0, total_vmse = 0.0;
  int total_batches = 0, total_skipped = 0;

  for (std::size_t i = 0; i < ids_.size(); ++i) {
    AgentTrajectory& tr = trajs[i];
    const std::size_t t_len = tr.samples.size();

    // Values for GAE; the trailing bootstrap slot is zeroed by the final
    // done flag but must be present.
    std::vector<double> values(t_len + 1, 0.0);
    for (std::size_t t = 0; t < t_len; ++t) {
      nn::forward(value_[i], tr.samples[t].obs_unit, ws_);
      values[t] = ws_.act.back()[0];
    }
    const auto adv = gae_advantages(tr.rewards, values, tr.dones, cfg_.gamma,
                                    cfg_.gae_lambda);
    const auto ret = discounted_returns(tr.rewards, tr.dones, cfg_.gamma);
    for (std::size_t t = 0; t < t_len; ++t) {
      tr.samples[t].advantage = adv[t];
      tr.samples[t].return_target = ret[t];
    }

    std::vector<std::size_t> order(t_len);
    for (std::size_t t = 0; t < t_len; ++t) order[t] = t;

    for (int epoch = 0; epoch < cfg_.epochs; ++epoch) {
      // Fisher-Yates with the trainer's shuffle stream.
      for (std::size_t k = t_len; k > 1; --k) {
        const std::size_t j = static_cast<std::size_t>(
            shuffle_rng_.uniform_int(0, static_cast<int>(k) - 1));
        std::swap(order[k - 1], order[j]);
      }
      for (std::size_t start = 0; start < t_len; start += cfg_.minibatch_size) {
        const std::size_t stop = std::min(t_len, start + cfg_.minibatch_size);
        std::vector<PpoSample> batch;
        batch.reserve(stop - start);
        for (std::size_t k = start; k < stop; ++k)
          batch.push_back(tr.samples[order[k]]);

        // Advantages are normalized per update batch.
        std::vector<double> a(batch.size());
        for (std::size_t k = 0; k < batch.size(); ++k) a[k] = batch[k].advantage;
        normalize_in_place(a);
        for (std::size_t k = 0; k < batch.size(); ++k) batch[k].advantage = a[k];

        PpoLossResult r = loss(static_cast<int>(i), batch);
        nn::adam_update(mean_[i].params, r.mean_grad, mean_opt_[i]);
        nn::adam_update(log_std_[i], r.log_std_grad, log_std_opt_[i]);
        nn::adam_update(value_[i].params, r.value_grad, value_opt_[i]);

        total_loss += r.total;
        total_surr += r.surrogate;
        total_vmse += r.value_mse;
        total_skipped += r.skipped;
        total_batches += 1;
      }
    }
  }

  TrainMetrics m;
  m.iteration = iteration_;
  double total_ret = 0.0;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    m.episode_return[ids_[i]] = mean_return[i];
    total_ret += mean_return[i];
  }
  m.total_return = total_ret;
  const double denom = std::max(1, total_batches);
  m.ppo_loss = total_loss / denom;
  m.actor_loss = total_surr / denom;
  m.critic_loss = total_vmse / denom;
  m.v_vio = mean_v_vio;
  m.extra["skipped_samples"] = static_cast<double>(total_skipped);
  iteration_ += 1;
  return m;
}

void PpoTrainer::train(const std::function<void(const TrainMetrics&)>& on_metrics,
                       const std::function<void(int)>& on_checkpoint) {
  for (int it = 0; it < cfg_.iterations; ++it) {
    const TrainMetrics m = run_iteration();
    if (!std::isfinite(m.total_return) || !std::isfinite(m.ppo_loss))
      throw std::runtime_error("ppo: non-finite metrics at iteration " +
                               std::to_string(m.iteration));
    if (on_metrics) on_metrics(m);
    const bool last = (it + 1 == cfg_.iterations);
    if (on_checkpoint && ((cfg_.checkpoint_every > 0 &&
                           (it + 1) % cfg_.checkpoint_every == 0) ||
                          last))
      on_checkpoint(m.iteration);
  }
}

nn::Checkpoint PpoTrainer::checkpoint() const {
  nn::Checkpoint ckpt;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    ckpt.emplace_back("ppo." + ids_[i] + ".policy_mean", nn::to_entry(mean_[i]));
    ckpt.emplace_back("ppo." + ids_[i] + ".log_std", nn::to_entry(log_std_[i]));
    ckpt.emplace_back("ppo." + ids_[i] + ".value", nn::to_entry(value_[i]));
  }
  return ckpt;
}

}  // namespace gridrl::train
