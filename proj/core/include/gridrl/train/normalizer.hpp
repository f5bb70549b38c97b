#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "gridrl/env/space.hpp"

namespace gridrl::train {

// Affine map between a box space and the unit cube [-1, 1]^n used for
// network inputs and policy outputs. Degenerate dimensions (high == low)
// get a half-width floor so the map stays invertible.
struct BoxNormalizer {
  std::vector<double> center;
  std::vector<double> half;

  explicit BoxNormalizer(const env::Space& space) {
    center.resize(space.size());
    half.resize(space.size());
    for (std::size_t k = 0; k < space.size(); ++k) {
      center[k] = 0.5 * (space.high[k] + space.low[k]);
      half[k] = std::max(0.5 * (space.high[k] - space.low[k]), 1e-9);
    }
  }

  std::vector<double> to_unit(std::span<const double> x) const {
    std::vector<double> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = (x[k] - center[k]) / half[k];
    return out;
  }

  std::vector<double> from_unit(std::span<const double> u) const {
    std::vector<double> out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = center[k] + half[k] * u[k];
    return out;
  }
};

}  // namespace gridrl::train
