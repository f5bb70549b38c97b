#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridrl::pf {

// One bus of a radial feeder. The line fields describe the branch from the
// parent bus down to this bus; the (single) slack bus has no parent.
struct BusSpec {
  std::string id;
  std::optional<std::string> parent;
  double r_pu = 0.0;
  double x_pu = 0.0;
};

// Validated radial feeder. Buses are canonicalized (sorted by id) on
// construction, so downstream results do not depend on input ordering.
class FeederModel {
 public:
  explicit FeederModel(std::vector<BusSpec> buses, double base_power_kva = 1000.0,
                       double base_voltage_kv = 4.16, double slack_voltage_pu = 1.0);

  std::size_t bus_count() const { return ids_.size(); }
  const std::vector<std::string>& bus_ids() const { return ids_; }

  // Canonical index of a bus id, or -1 if unknown.
  int bus_index(std::string_view id) const;

  int slack_index() const { return slack_; }
  int parent_index(int bus) const { return parents_[bus]; }
  std::complex<double> line_impedance(int bus) const { return z_[bus]; }

  // Topological order, slack first; parents always precede children.
  const std::vector<int>& sweep_order() const { return order_; }

  double base_power_kva() const { return base_power_kva_; }
  double base_voltage_kv() const { return base_voltage_kv_; }
  double slack_voltage_pu() const { return slack_voltage_pu_; }

 private:
  std::vector<std::string> ids_;
  std::vector<int> parents_;
  std::vector<std::complex<double>> z_;
  std::vector<int> order_;
  int slack_ = 0;
  double base_power_kva_;
  double base_voltage_kv_;
  double slack_voltage_pu_;
};

// Net complex power per bus in kW/kvar, consumption-positive. Injections at
// the slack bus are rejected; the slack balances the system.
class InjectionSet {
 public:
  explicit InjectionSet(const FeederModel& feeder);

  void add(std::string_view bus, double p_kw, double q_kvar);
  void add(int bus_index, double p_kw, double q_kvar);
  void set(std::string_view bus, double p_kw, double q_kvar);
  void clear();

  std::span<const std::complex<double>> s_kva() const { return s_; }
  const FeederModel* feeder() const { return feeder_; }

 private:
  const FeederModel* feeder_;
  std::vector<std::complex<double>> s_;
};

}  // namespace gridrl::pf
