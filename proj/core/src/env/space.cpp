#include "gridrl/env/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gridrl::env {

Space::Space(std::vector<double> lo, std::vector<double> hi)
    : low(std::move(lo)), high(std::move(hi)) {
  if (low.size() != high.size())
    throw std::invalid_argument("space bounds must have equal length");
  if (low.empty()) throw std::invalid_argument("space must have length >= 1");
  for (std::size_t k = 0; k < low.size(); ++k) {
    if (!std::isfinite(low[k]) || !std::isfinite(high[k]))
      throw std::invalid_argument("space bounds must be finite");
    if (low[k] > high[k])
      throw std::invalid_argument("space bound low[" + std::to_string(k) +
                                  "] exceeds high[" + std::to_string(k) + "]");
  }
}

bool Space::contains(std::span<const double> v, double tol) const {
  if (v.size() != low.size()) return false;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!(v[k] >= low[k] - tol && v[k] <= high[k] + tol)) return false;
  return true;
}

Space concat(const Space& a, const Space& b) {
  std::vector<double> lo(a.low);
  lo.insert(lo.end(), b.low.begin(), b.low.end());
  std::vector<double> hi(a.high);
  hi.insert(hi.end(), b.high.begin(), b.high.end());
  return Space(std::move(lo), std::move(hi));
}

std::vector<double> clamp_action(std::span<const double> action, const Space& space) {
  if (action.size() != space.size())
    throw std::invalid_argument("clamp_action: action length " +
                                std::to_string(action.size()) +
                                " does not match space length " +
                                std::to_string(space.size()));
  std::vector<double> out(action.size());
  for (std::size_t k = 0; k < action.size(); ++k)
    out[k] = std::min(std::max(action[k], space.low[k]), space.high[k]);
  return out;
}

}  // namespace gridrl::env
