#include "gridrl/env/multi_component_env.hpp"

#include <set>
#include <stdexcept>

#include "gridrl/util/rng.hpp"

namespace gridrl::env {

MultiComponentEnv::MultiComponentEnv(
    std::string name, std::vector<std::shared_ptr<ComponentEnv>> components)
    : name_(std::move(name)), components_(std::move(components)) {
  if (name_.empty()) throw std::invalid_argument("agent name must be non-empty");
  if (components_.empty())
    throw std::invalid_argument(name_ + ": component list must be non-empty");

  std::set<std::string> names;
  for (const auto& c : components_) {
    if (!c) throw std::invalid_argument(name_ + ": null component");
    if (!names.insert(c->name()).second)
      throw std::invalid_argument(name_ + ": duplicate component name \"" +
                                  c->name() + "\"");
    if (c->horizon() != components_.front()->horizon())
      throw std::invalid_argument(name_ + ": components must share one horizon");
  }

  obs_space_ = components_.front()->observation_space();
  act_space_ = components_.front()->action_space();
  for (std::size_t i = 1; i < components_.size(); ++i) {
    obs_space_ = concat(obs_space_, components_[i]->observation_space());
    act_space_ = concat(act_space_, components_[i]->action_space());
  }
}

int MultiComponentEnv::horizon() const { return components_.front()->horizon(); }

std::vector<double> MultiComponentEnv::reset(std::uint64_t seed) {
  std::vector<double> obs;
  obs.reserve(obs_space_.size());
  for (const auto& c : components_) {
    const auto part = c->reset(seed ^ fnv1a64(c->name()));
    obs.insert(obs.end(), part.begin(), part.end());
  }
  return obs;
}

StepResult MultiComponentEnv::step(std::span<const double> action,
                                   const GridSignal& grid) {
  if (action.size() != act_space_.size())
    throw std::invalid_argument(name_ + ": action length mismatch");

  StepResult out;
  out.observation.reserve(obs_space_.size());
  out.done = true;
  std::size_t offset = 0;
  for (const auto& c : components_) {
    const std::size_t width = c->action_space().size();
    const StepResult r = c->step(action.subspan(offset, width), grid);
    offset += width;
    out.observation.insert(out.observation.end(), r.observation.begin(),
                           r.observation.end());
    out.reward += r.reward;
    out.done = out.done && r.done;
    out.meta[c->name() + ".reward"] = r.reward;
    for (const auto& [key, value] : r.meta) out.meta[c->name() + "." + key] = value;
  }
  return out;
}

double MultiComponentEnv::real_power_kw() const {
  double p = 0.0;
  for (const auto& c : components_) p += c->real_power_kw();
  return p;
}

double MultiComponentEnv::reactive_power_kvar() const {
  double q = 0.0;
  for (const auto& c : components_) q += c->reactive_power_kvar();
  return q;
}

bool MultiComponentEnv::done() const {
  for (const auto& c : components_)
    if (!c->done()) return false;
  return true;
}

std::shared_ptr<ComponentEnv> compose_multi_component(
    std::string name, std::vector<std::shared_ptr<ComponentEnv>> components) {
  return std::make_shared<MultiComponentEnv>(std::move(name), std::move(components));
}

}  // namespace gridrl::env
