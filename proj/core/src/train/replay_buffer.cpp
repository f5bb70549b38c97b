#include "gridrl/train/transition.hpp"

#include <stdexcept>

namespace gridrl::train {

ReplayBuffer::ReplayBuffer(std::size_t capacity, std::uint64_t seed)
    : capacity_(capacity), rng_(seed) {
  if (capacity_ == 0) throw std::invalid_argument("replay buffer capacity must be > 0");
  data_.reserve(capacity_);
}

void ReplayBuffer::push(Transition t) {
  if (data_.size() < capacity_) {
    data_.push_back(std::move(t));
  } else {
    data_[next_] = std::move(t);
  }
  next_ = (next_ + 1) % capacity_;
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t batch) {
  if (data_.empty()) throw std::logic_error("cannot sample from an empty replay buffer");
  std::vector<const Transition*> out;
  out.reserve(batch);
  for (std::size_t k = 0; k < batch; ++k)
    out.push_back(&data_[rng_.uniform_int(0, static_cast<int>(data_.size()) - 1)]);
  return out;
}

}  // namespace gridrl::train
