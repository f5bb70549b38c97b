#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gridrl {

// 64-bit FNV-1a. Used to derive stable per-name seed offsets: the seed of a
// sub-entity is `seed ^ fnv1a64(id)` so runs stay reproducible while distinct
// ids get decorrelated streams.
std::uint64_t fnv1a64(std::string_view s);

// Mixes (base, salt) into a fresh seed via splitmix64. Stable across builds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

// mt19937_64 engine with hand-rolled distribution arithmetic so draw sequences
// are identical on every toolchain (std:: distributions are not portable).
//
// Draw semantics:
//   uniform()       one engine draw, top 53 bits -> [0,1)
//   uniform(a,b)    a + uniform()*(b-a)
//   normal()        Box-Muller pair; second value cached for the next call
//   uniform_int(a,b) a + next_u64() % (b-a+1), inclusive bounds
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }
  double uniform();
  double uniform(double lo, double hi);
  double normal();
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gridrl
