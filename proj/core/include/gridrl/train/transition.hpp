#pragma once

#include <cstdint>
#include <vector>

#include "gridrl/util/rng.hpp"

namespace gridrl::train {

// Joint experience tuple. Per-agent vectors are stored in sorted-agent-id
// order (the order of MultiAgentEnvBase::agent_ids()).
struct Transition {
  std::vector<std::vector<double>> obs;
  std::vector<std::vector<double>> actions;
  std::vector<double> rewards;
  std::vector<std::vector<double>> next_obs;
  bool done = false;
};

// Ring buffer with a seeded uniform sampler. Insertion beyond capacity
// evicts the oldest entries; the stored set is always the most recent
// min(inserted, capacity) transitions.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, std::uint64_t seed);

  void push(Transition t);
  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Transition& operator[](std::size_t i) const { return data_[i]; }

  // Uniform with replacement; reproducible for a fixed construction seed.
  std::vector<const Transition*> sample(std::size_t batch);

 private:
  std::size_t capacity_;
  std::vector<Transition> data_;
  std::size_t next_ = 0;
  Rng rng_;
};

}  // namespace gridrl::train
