#pragma once

#include <span>
#include <vector>

namespace gridrl::env {

// Box bounds for a flat observation or action vector.
struct Space {
  std::vector<double> low;
  std::vector<double> high;

  Space() = default;
  Space(std::vector<double> low, std::vector<double> high);  // validates

  std::size_t size() const { return low.size(); }
  bool contains(std::span<const double> v, double tol = 0.0) const;
};

Space concat(const Space& a, const Space& b);

// Elementwise min(max(action, low), high). Idempotent. Throws on length
// mismatch; non-finite entries pass through for the caller to reject.
std::vector<double> clamp_action(std::span<const double> action, const Space& space);

}  // namespace gridrl::env
