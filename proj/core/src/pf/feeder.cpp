#include "gridrl/pf/feeder.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "gridrl/util/errors.hpp"

namespace gridrl::pf {

FeederModel::FeederModel(std::vector<BusSpec> buses, double base_power_kva,
                         double base_voltage_kv, double slack_voltage_pu)
    : base_power_kva_(base_power_kva),
      base_voltage_kv_(base_voltage_kv),
      slack_voltage_pu_(slack_voltage_pu) {
  if (buses.empty()) throw ConfigError("feeder: bus list is empty");
  if (!(base_power_kva > 0.0) || !(base_voltage_kv > 0.0))
    throw ConfigError("feeder: base power and base voltage must be positive");
  if (!(slack_voltage_pu > 0.0))
    throw ConfigError("feeder: slack voltage must be positive");

  std::sort(buses.begin(), buses.end(),
            [](const BusSpec& a, const BusSpec& b) { return a.id < b.id; });

  const std::size_t n = buses.size();
  ids_.reserve(n);
  std::map<std::string, int, std::less<>> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (buses[i].id.empty()) throw ConfigError("feeder: empty bus id");
    if (!index.emplace(buses[i].id, static_cast<int>(i)).second)
      throw ConfigError("feeder: duplicate bus id \"" + buses[i].id + "\"");
    ids_.push_back(buses[i].id);
  }

  parents_.assign(n, -1);
  z_.assign(n, {0.0, 0.0});
  slack_ = -1;
  for (std::size_t i = 0; i < n; ++i) {
    const BusSpec& b = buses[i];
    if (!b.parent.has_value()) {
      if (slack_ >= 0)
        throw ConfigError("feeder: more than one slack bus (\"" + ids_[slack_] +
                          "\" and \"" + b.id + "\")");
      slack_ = static_cast<int>(i);
      if (b.r_pu != 0.0 || b.x_pu != 0.0)
        throw ConfigError("feeder: slack bus \"" + b.id +
                          "\" must not carry line impedance");
      continue;
    }
    const auto it = index.find(*b.parent);
    if (it == index.end())
      throw ConfigError("feeder: bus \"" + b.id + "\" references unknown parent \"" +
                        *b.parent + "\"");
    if (it->second == static_cast<int>(i))
      throw ConfigError("feeder: bus \"" + b.id + "\" is its own parent");
    if (!(b.r_pu >= 0.0) || !(b.x_pu >= 0.0) || !std::isfinite(b.r_pu) ||
        !std::isfinite(b.x_pu))
      throw ConfigError("feeder: bus \"" + b.id + "\" has negative or non-finite impedance");
    parents_[i] = it->second;
    z_[i] = {b.r_pu, b.x_pu};
  }
  if (slack_ < 0) throw ConfigError("feeder: no slack bus (one bus must have no parent)");

  // BFS from the slack; children visited in canonical (sorted-id) order.
  std::vector<std::vector<int>> children(n);
  for (std::size_t i = 0; i < n; ++i)
    if (parents_[i] >= 0) children[parents_[i]].push_back(static_cast<int>(i));

  order_.reserve(n);
  order_.push_back(slack_);
  for (std::size_t head = 0; head < order_.size(); ++head)
    for (int c : children[order_[head]]) order_.push_back(c);

  if (order_.size() != n)
    throw ConfigError("feeder: topology is not a tree rooted at the slack bus "
                      "(cycle or disconnected bus)");
}

int FeederModel::bus_index(std::string_view id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return -1;
  return static_cast<int>(it - ids_.begin());
}

InjectionSet::InjectionSet(const FeederModel& feeder)
    : feeder_(&feeder), s_(feeder.bus_count(), {0.0, 0.0}) {}

void InjectionSet::add(std::string_view bus, double p_kw, double q_kvar) {
  const int i = feeder_->bus_index(bus);
  if (i < 0)
    throw std::invalid_argument("injection references unknown bus \"" +
                                std::string(bus) + "\"");
  add(i, p_kw, q_kvar);
}

void InjectionSet::add(int bus_index, double p_kw, double q_kvar) {
  if (bus_index < 0 || bus_index >= static_cast<int>(s_.size()))
    throw std::invalid_argument("injection bus index out of range");
  if (bus_index == feeder_->slack_index())
    throw std::invalid_argument("injections at the slack bus are not supported");
  if (!std::isfinite(p_kw) || !std::isfinite(q_kvar))
    throw std::invalid_argument("injection must be finite");
  s_[bus_index] += std::complex<double>(p_kw, q_kvar);
}

void InjectionSet::set(std::string_view bus, double p_kw, double q_kvar) {
  const int i = feeder_->bus_index(bus);
  if (i < 0)
    throw std::invalid_argument("injection references unknown bus \"" +
                                std::string(bus) + "\"");
  if (i == feeder_->slack_index())
    throw std::invalid_argument("injections at the slack bus are not supported");
  if (!std::isfinite(p_kw) || !std::isfinite(q_kvar))
    throw std::invalid_argument("injection must be finite");
  s_[i] = {p_kw, q_kvar};
}

void InjectionSet::clear() { std::fill(s_.begin(), s_.end(), std::complex<double>{0.0, 0.0}); }

}  // namespace gridrl::pf
