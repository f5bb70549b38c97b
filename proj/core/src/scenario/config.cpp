#include "gridrl/scenario/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "gridrl/util/csv.hpp"
#include "gridrl/util/errors.hpp"

namespace gridrl::scenario {

namespace {

using nlohmann::json;

// Carries "file: json.path" context into every error message.
struct Ctx {
  const json* node;
  std::string file;
  std::string path;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(file + ": " + path + ": " + what);
  }

  Ctx child(const std::string& key) const {
    if (!node->is_object()) fail("expected an object");
    const auto it = node->find(key);
    if (it == node->end()) fail("missing required field \"" + key + "\"");
    return Ctx{&*it, file, path + "." + key};
  }

  std::optional<Ctx> maybe(const std::string& key) const {
    if (!node->is_object()) fail("expected an object");
    const auto it = node->find(key);
    if (it == node->end()) return std::nullopt;
    return Ctx{&*it, file, path + "." + key};
  }

  Ctx element(std::size_t i) const {
    return Ctx{&(*node)[i], file, path + "[" + std::to_string(i) + "]"};
  }

  std::size_t array_size() const {
    if (!node->is_array()) fail("expected an array");
    return node->size();
  }

  std::string as_string() const {
    if (!node->is_string()) fail("expected a string");
    return node->get<std::string>();
  }

  double as_double() const {
    if (!node->is_number()) fail("expected a number");
    return node->get<double>();
  }

  int as_int() const {
    if (!node->is_number_integer()) fail("expected an integer");
    return node->get<int>();
  }

  std::uint64_t as_u64() const {
    if (!node->is_number_unsigned() && !node->is_number_integer())
      fail("expected a non-negative integer");
    const auto v = node->get<std::int64_t>();
    if (v < 0) fail("expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
  }

  bool as_bool() const {
    if (!node->is_boolean()) fail("expected a boolean");
    return node->get<bool>();
  }
};

double get_or(const Ctx& obj, const std::string& key, double fallback) {
  const auto c = obj.maybe(key);
  return c ? c->as_double() : fallback;
}

int get_or(const Ctx& obj, const std::string& key, int fallback) {
  const auto c = obj.maybe(key);
  return c ? c->as_int() : fallback;
}

bool get_or(const Ctx& obj, const std::string& key, bool fallback) {
  const auto c = obj.maybe(key);
  return c ? c->as_bool() : fallback;
}

std::vector<int> get_or(const Ctx& obj, const std::string& key,
                        std::vector<int> fallback) {
  const auto c = obj.maybe(key);
  if (!c) return fallback;
  std::vector<int> out;
  for (std::size_t i = 0; i < c->array_size(); ++i) out.push_back(c->element(i).as_int());
  return out;
}

ProfileRef parse_profile_ref(const Ctx& c, const std::filesystem::path& base_dir) {
  ProfileRef ref;
  if (c.node->is_string()) {
    ref.path = c.as_string();
  } else if (c.node->is_object()) {
    ref.path = c.child("profile").as_string();
    ref.scale = get_or(c, "scale", 1.0);
  } else {
    c.fail("expected a profile path string or {profile, scale} object");
  }
  std::filesystem::path p(ref.path);
  if (p.is_relative()) p = base_dir / p;
  ref.path = std::filesystem::weakly_canonical(p).string();
  return ref;
}

env::GridObservationMask parse_mask(const Ctx& c) {
  env::GridObservationMask mask;
  for (std::size_t i = 0; i < c.array_size(); ++i) {
    const std::string f = c.element(i).as_string();
    if (f == "v_comm")
      mask.v_comm = true;
    else if (f == "v_min")
      mask.v_min = true;
    else if (f == "v_max")
      mask.v_max = true;
    else
      c.element(i).fail("unknown grid field \"" + f +
                        "\" (expected v_comm, v_min or v_max)");
  }
  return mask;
}

ComponentConfig parse_component(const Ctx& c, const ScenarioConfig& cfg) {
  const std::string type = c.child("type").as_string();
  const std::string name = c.child("name").as_string();
  const auto params = c.maybe("params");
  const auto profiles = c.maybe("profiles");

  auto pget = [&](const std::string& key, double fallback) {
    return params ? get_or(*params, key, fallback) : fallback;
  };

  const dev::RewardWeights& w = cfg.reward_weights;
  if (type == "building") {
    BuildingComponentConfig b;
    b.name = name;
    dev::BuildingParams& p = b.params;
    p.comfort_weight = w.comfort_weight;
    p.energy_weight = w.energy_weight;
    p.comfort_low_c = w.comfort_low_c;
    p.comfort_high_c = w.comfort_high_c;
    if (params) {
      p.zones = get_or(*params, "zones", p.zones);
      p.ambient_resistance_c_per_kw =
          get_or(*params, "ambient_resistance_c_per_kw", p.ambient_resistance_c_per_kw);
      p.internal_resistance_c_per_kw = get_or(*params, "internal_resistance_c_per_kw",
                                              p.internal_resistance_c_per_kw);
      p.capacitance_kwh_per_c =
          get_or(*params, "capacitance_kwh_per_c", p.capacitance_kwh_per_c);
      p.cop = get_or(*params, "cop", p.cop);
      p.hvac_max_kw_per_zone =
          get_or(*params, "hvac_max_kw_per_zone", p.hvac_max_kw_per_zone);
      p.comfort_low_c = get_or(*params, "comfort_low_c", p.comfort_low_c);
      p.comfort_high_c = get_or(*params, "comfort_high_c", p.comfort_high_c);
      p.comfort_weight = get_or(*params, "comfort_weight", p.comfort_weight);
      p.energy_weight = get_or(*params, "energy_weight", p.energy_weight);
      p.per_zone_actions = get_or(*params, "per_zone_actions", p.per_zone_actions);
      p.initial_temp_low_c = get_or(*params, "initial_temp_low_c", p.initial_temp_low_c);
      p.initial_temp_high_c =
          get_or(*params, "initial_temp_high_c", p.initial_temp_high_c);
      p.power_factor = get_or(*params, "power_factor", p.power_factor);
    }
    if (!profiles) c.fail("building component needs profiles.ambient_c");
    b.ambient = parse_profile_ref(profiles->child("ambient_c"), cfg.base_dir);
    return b;
  }
  if (type == "pv") {
    PvComponentConfig pv;
    pv.name = name;
    pv.params.rating_kw = pget("rating_kw", pv.params.rating_kw);
    if (!profiles) c.fail("pv component needs profiles.available_kw");
    pv.available = parse_profile_ref(profiles->child("available_kw"), cfg.base_dir);
    return pv;
  }
  if (type == "storage") {
    StorageComponentConfig st;
    st.name = name;
    dev::StorageParams& p = st.params;
    p.capacity_kwh = pget("capacity_kwh", p.capacity_kwh);
    p.rated_kw = pget("rated_kw", p.rated_kw);
    p.eta_charge = pget("eta_charge", p.eta_charge);
    p.eta_discharge = pget("eta_discharge", p.eta_discharge);
    p.initial_soc_fraction = pget("initial_soc_fraction", p.initial_soc_fraction);
    return st;
  }
  if (type == "ev_station") {
    EvComponentConfig ev;
    ev.name = name;
    dev::EvStationParams& p = ev.params;
    p.peak_threshold_kw = w.peak_threshold_kw;
    p.unmet_weight = w.unmet_weight;
    p.peak_weight = w.peak_weight;
    if (params) {
      p.chargers = get_or(*params, "chargers", p.chargers);
      p.vehicle_max_rate_kw = get_or(*params, "vehicle_max_rate_kw", p.vehicle_max_rate_kw);
      p.demand_min_kwh = get_or(*params, "demand_min_kwh", p.demand_min_kwh);
      p.demand_max_kwh = get_or(*params, "demand_max_kwh", p.demand_max_kwh);
      p.dwell_min_h = get_or(*params, "dwell_min_h", p.dwell_min_h);
      p.dwell_max_h = get_or(*params, "dwell_max_h", p.dwell_max_h);
      p.arrival_rate_busy_per_h =
          get_or(*params, "arrival_rate_busy_per_h", p.arrival_rate_busy_per_h);
      p.arrival_rate_quiet_per_h =
          get_or(*params, "arrival_rate_quiet_per_h", p.arrival_rate_quiet_per_h);
      p.busy_start_h = get_or(*params, "busy_start_h", p.busy_start_h);
      p.busy_end_h = get_or(*params, "busy_end_h", p.busy_end_h);
      p.peak_threshold_kw = get_or(*params, "peak_threshold_kw", p.peak_threshold_kw);
      p.unmet_weight = get_or(*params, "unmet_weight", p.unmet_weight);
      p.peak_weight = get_or(*params, "peak_weight", p.peak_weight);
      p.power_factor = get_or(*params, "power_factor", p.power_factor);
    }
    return ev;
  }
  c.fail("unknown component type \"" + type +
         "\" (expected building, pv, storage or ev_station)");
}

void parse_trainer(const Ctx& c, ScenarioConfig& cfg) {
  cfg.trainer.algorithm = c.child("algorithm").as_string();
  if (cfg.trainer.algorithm != "maddpg" && cfg.trainer.algorithm != "ppo")
    c.child("algorithm")
        .fail("unknown algorithm \"" + cfg.trainer.algorithm +
              "\" (expected maddpg or ppo)");

  if (cfg.trainer.algorithm == "maddpg") {
    train::MaddpgConfig& m = cfg.trainer.maddpg;
    if (const auto sec = c.maybe("maddpg")) {
      m.iterations = get_or(*sec, "iterations", m.iterations);
      m.episodes_per_iteration =
          get_or(*sec, "episodes_per_iteration", m.episodes_per_iteration);
      m.updates_per_iteration =
          get_or(*sec, "updates_per_iteration", m.updates_per_iteration);
      m.batch_size = static_cast<std::size_t>(
          get_or(*sec, "batch_size", static_cast<int>(m.batch_size)));
      m.buffer_capacity = static_cast<std::size_t>(
          get_or(*sec, "buffer_capacity", static_cast<int>(m.buffer_capacity)));
      m.gamma = get_or(*sec, "gamma", m.gamma);
      m.tau = get_or(*sec, "tau", m.tau);
      m.lr_actor = get_or(*sec, "lr_actor", m.lr_actor);
      m.lr_critic = get_or(*sec, "lr_critic", m.lr_critic);
      m.hidden = get_or(*sec, "hidden", m.hidden);
      m.noise_sigma_start = get_or(*sec, "noise_sigma_start", m.noise_sigma_start);
      m.noise_sigma_end = get_or(*sec, "noise_sigma_end", m.noise_sigma_end);
      m.noise_anneal_iterations =
          get_or(*sec, "noise_anneal_iterations", m.noise_anneal_iterations);
      m.reward_scale = get_or(*sec, "reward_scale", m.reward_scale);
      m.checkpoint_every = get_or(*sec, "checkpoint_every", m.checkpoint_every);
    }
    m.seed = cfg.seed;
  } else {
    train::PpoConfig& p = cfg.trainer.ppo;
    if (const auto sec = c.maybe("ppo")) {
      p.iterations = get_or(*sec, "iterations", p.iterations);
      p.episodes_per_iteration =
          get_or(*sec, "episodes_per_iteration", p.episodes_per_iteration);
      p.epochs = get_or(*sec, "epochs", p.epochs);
      p.minibatch_size = static_cast<std::size_t>(
          get_or(*sec, "minibatch_size", static_cast<int>(p.minibatch_size)));
      p.gamma = get_or(*sec, "gamma", p.gamma);
      p.gae_lambda = get_or(*sec, "gae_lambda", p.gae_lambda);
      p.clip_epsilon = get_or(*sec, "clip_epsilon", p.clip_epsilon);
      p.value_coef = get_or(*sec, "value_coef", p.value_coef);
      p.entropy_coef = get_or(*sec, "entropy_coef", p.entropy_coef);
      p.lr_policy = get_or(*sec, "lr_policy", p.lr_policy);
      p.lr_value = get_or(*sec, "lr_value", p.lr_value);
      p.hidden = get_or(*sec, "hidden", p.hidden);
      p.initial_log_std = get_or(*sec, "initial_log_std", p.initial_log_std);
      p.reward_scale = get_or(*sec, "reward_scale", p.reward_scale);
      p.checkpoint_every = get_or(*sec, "checkpoint_every", p.checkpoint_every);
    }
    p.seed = cfg.seed;
  }
}

void validate_cross_references(const ScenarioConfig& cfg, const std::string& file) {
  std::set<std::string> bus_ids;
  int slack_count = 0;
  for (const auto& b : cfg.feeder.buses) {
    if (!bus_ids.insert(b.id).second)
      throw ConfigError(file + ": feeder.buses: duplicate bus id \"" + b.id + "\"");
    if (!b.parent) ++slack_count;
  }
  if (slack_count != 1)
    throw ConfigError(file + ": feeder.buses: exactly one bus must be the slack "
                      "(no parent); found " + std::to_string(slack_count));

  std::string slack_id;
  for (const auto& b : cfg.feeder.buses)
    if (!b.parent) slack_id = b.id;

  std::set<std::string> agent_ids;
  for (const auto& a : cfg.agents) {
    if (!agent_ids.insert(a.id).second)
      throw ConfigError(file + ": agents: duplicate agent id \"" + a.id + "\"");
    if (!bus_ids.count(a.bus))
      throw ConfigError(file + ": agents." + a.id + ".bus: unknown bus \"" + a.bus + "\"");
    if (a.bus == slack_id)
      throw ConfigError(file + ": agents." + a.id + ".bus: agents cannot sit on the slack bus");
    if (a.components.empty())
      throw ConfigError(file + ": agents." + a.id + ": component list is empty");
    std::set<std::string> comp_names;
    for (const auto& comp : a.components)
      if (!comp_names.insert(component_name(comp)).second)
        throw ConfigError(file + ": agents." + a.id + ": duplicate component name \"" +
                          component_name(comp) + "\"");
  }

  for (std::size_t i = 0; i < cfg.system_rewards.size(); ++i) {
    const auto& term = cfg.system_rewards[i];
    const std::string at = file + ": system_rewards[" + std::to_string(i) + "]";
    if (term.kind == env::SystemRewardTerm::Kind::BusVoltageViolation &&
        !bus_ids.count(term.bus))
      throw ConfigError(at + ".bus: unknown bus \"" + term.bus + "\"");
    if (term.agents.empty()) throw ConfigError(at + ".agents: must not be empty");
    for (const auto& id : term.agents)
      if (!agent_ids.count(id))
        throw ConfigError(at + ".agents: unknown agent \"" + id + "\"");
  }
}

void validate_profiles(const ScenarioConfig& cfg, const std::string& file) {
  std::map<std::string, std::size_t> lengths;
  auto check = [&](const ProfileRef& ref, const std::string& where) {
    auto it = lengths.find(ref.path);
    if (it == lengths.end())
      it = lengths.emplace(ref.path, load_profile_csv(ref.path).size()).first;
    if (it->second < static_cast<std::size_t>(cfg.horizon))
      throw ConfigError(file + ": " + where + ": profile \"" + ref.path + "\" has " +
                        std::to_string(it->second) + " steps, horizon needs " +
                        std::to_string(cfg.horizon));
  };

  for (const auto& b : cfg.feeder.buses)
    if (b.base_load) check(*b.base_load, "feeder.buses." + b.id + ".base_load");
  for (const auto& a : cfg.agents)
    for (const auto& comp : a.components) {
      if (const auto* b = std::get_if<BuildingComponentConfig>(&comp))
        check(b->ambient, "agents." + a.id + "." + b->name + ".ambient_c");
      if (const auto* pv = std::get_if<PvComponentConfig>(&comp))
        check(pv->available, "agents." + a.id + "." + pv->name + ".available_kw");
    }
}

json dump_profile_ref(const ProfileRef& ref) {
  return json{{"profile", ref.path}, {"scale", ref.scale}};
}

json dump_component(const ComponentConfig& comp) {
  json j;
  if (const auto* b = std::get_if<BuildingComponentConfig>(&comp)) {
    j["type"] = "building";
    j["name"] = b->name;
    const dev::BuildingParams& p = b->params;
    j["params"] = {
        {"zones", p.zones},
        {"ambient_resistance_c_per_kw", p.ambient_resistance_c_per_kw},
        {"internal_resistance_c_per_kw", p.internal_resistance_c_per_kw},
        {"capacitance_kwh_per_c", p.capacitance_kwh_per_c},
        {"cop", p.cop},
        {"hvac_max_kw_per_zone", p.hvac_max_kw_per_zone},
        {"comfort_low_c", p.comfort_low_c},
        {"comfort_high_c", p.comfort_high_c},
        {"comfort_weight", p.comfort_weight},
        {"energy_weight", p.energy_weight},
        {"per_zone_actions", p.per_zone_actions},
        {"initial_temp_low_c", p.initial_temp_low_c},
        {"initial_temp_high_c", p.initial_temp_high_c},
        {"power_factor", p.power_factor}};
    j["profiles"] = {{"ambient_c", dump_profile_ref(b->ambient)}};
  } else if (const auto* pv = std::get_if<PvComponentConfig>(&comp)) {
    j["type"] = "pv";
    j["name"] = pv->name;
    j["params"] = {{"rating_kw", pv->params.rating_kw}};
    j["profiles"] = {{"available_kw", dump_profile_ref(pv->available)}};
  } else if (const auto* st = std::get_if<StorageComponentConfig>(&comp)) {
    j["type"] = "storage";
    j["name"] = st->name;
    const dev::StorageParams& p = st->params;
    j["params"] = {{"capacity_kwh", p.capacity_kwh},
                   {"rated_kw", p.rated_kw},
                   {"eta_charge", p.eta_charge},
                   {"eta_discharge", p.eta_discharge},
                   {"initial_soc_fraction", p.initial_soc_fraction}};
  } else if (const auto* ev = std::get_if<EvComponentConfig>(&comp)) {
    j["type"] = "ev_station";
    j["name"] = ev->name;
    const dev::EvStationParams& p = ev->params;
    j["params"] = {{"chargers", p.chargers},
                   {"vehicle_max_rate_kw", p.vehicle_max_rate_kw},
                   {"demand_min_kwh", p.demand_min_kwh},
                   {"demand_max_kwh", p.demand_max_kwh},
                   {"dwell_min_h", p.dwell_min_h},
                   {"dwell_max_h", p.dwell_max_h},
                   {"arrival_rate_busy_per_h", p.arrival_rate_busy_per_h},
                   {"arrival_rate_quiet_per_h", p.arrival_rate_quiet_per_h},
                   {"busy_start_h", p.busy_start_h},
                   {"busy_end_h", p.busy_end_h},
                   {"peak_threshold_kw", p.peak_threshold_kw},
                   {"unmet_weight", p.unmet_weight},
                   {"peak_weight", p.peak_weight},
                   {"power_factor", p.power_factor}};
  }
  return j;
}

}  // namespace

const std::string& component_name(const ComponentConfig& c) {
  return std::visit([](const auto& v) -> const std::string& { return v.name; }, c);
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open scenario file");

  json root;
  try {
    root = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }

  const std::string file = path.string();
  ScenarioConfig cfg;
  cfg.base_dir = std::filesystem::weakly_canonical(path).parent_path();

  const Ctx top{&root, file, "$"};
  cfg.name = top.child("name").as_string();
  cfg.seed = top.child("seed").as_u64();
  cfg.horizon = get_or(top, "horizon", cfg.horizon);
  cfg.dt_minutes = get_or(top, "dt_minutes", cfg.dt_minutes);
  if (cfg.horizon <= 0) top.fail("horizon must be positive");
  if (!(cfg.dt_minutes > 0.0)) top.fail("dt_minutes must be positive");

  if (const auto band = top.maybe("voltage_band")) {
    cfg.band_lower = get_or(*band, "lower", cfg.band_lower);
    cfg.band_upper = get_or(*band, "upper", cfg.band_upper);
    if (!(cfg.band_lower < cfg.band_upper)) band->fail("band must satisfy lower < upper");
  }
  cfg.load_power_factor = get_or(top, "load_power_factor", cfg.load_power_factor);
  cfg.divergence_penalty = get_or(top, "divergence_penalty", cfg.divergence_penalty);

  if (const auto w = top.maybe("reward_weights")) {
    dev::RewardWeights& rw = cfg.reward_weights;
    rw.comfort_weight = get_or(*w, "comfort_weight", rw.comfort_weight);
    rw.energy_weight = get_or(*w, "energy_weight", rw.energy_weight);
    if (const auto band = w->maybe("comfort_band_c")) {
      if (band->array_size() != 2) band->fail("expected [low, high]");
      rw.comfort_low_c = band->element(0).as_double();
      rw.comfort_high_c = band->element(1).as_double();
    }
    rw.lambda = get_or(*w, "lambda", rw.lambda);
    rw.peak_threshold_kw = get_or(*w, "peak_threshold_kw", rw.peak_threshold_kw);
    rw.unmet_weight = get_or(*w, "unmet_weight", rw.unmet_weight);
    rw.peak_weight = get_or(*w, "peak_weight", rw.peak_weight);
    try {
      rw.validate();
    } catch (const std::exception& e) {
      w->fail(e.what());
    }
  }

  const Ctx feeder = top.child("feeder");
  cfg.feeder.base_power_kva = get_or(feeder, "base_power_kva", cfg.feeder.base_power_kva);
  cfg.feeder.base_voltage_kv = get_or(feeder, "base_voltage_kv", cfg.feeder.base_voltage_kv);
  cfg.feeder.slack_voltage_pu =
      get_or(feeder, "slack_voltage_pu", cfg.feeder.slack_voltage_pu);
  const Ctx buses = feeder.child("buses");
  for (std::size_t i = 0; i < buses.array_size(); ++i) {
    const Ctx b = buses.element(i);
    BusConfig bus;
    bus.id = b.child("id").as_string();
    const bool slack = get_or(b, "slack", false);
    if (const auto parent = b.maybe("parent")) {
      if (slack) b.fail("a slack bus cannot have a parent");
      bus.parent = parent->as_string();
      bus.r_pu = b.child("r_pu").as_double();
      bus.x_pu = b.child("x_pu").as_double();
    } else if (!slack) {
      b.fail("bus needs either a parent or \"slack\": true");
    }
    if (const auto load = b.maybe("base_load"))
      bus.base_load = parse_profile_ref(*load, cfg.base_dir);
    cfg.feeder.buses.push_back(std::move(bus));
  }

  const Ctx agents = top.child("agents");
  if (agents.array_size() == 0) agents.fail("at least one agent is required");
  for (std::size_t i = 0; i < agents.array_size(); ++i) {
    const Ctx a = agents.element(i);
    AgentConfig agent;
    agent.id = a.child("id").as_string();
    agent.bus = a.child("bus").as_string();
    if (const auto mask = a.maybe("grid_observation")) agent.grid_obs = parse_mask(*mask);
    const Ctx comps = a.child("components");
    if (comps.array_size() == 0) comps.fail("component list is empty");
    for (std::size_t k = 0; k < comps.array_size(); ++k)
      agent.components.push_back(parse_component(comps.element(k), cfg));
    cfg.agents.push_back(std::move(agent));
  }

  if (const auto terms = top.maybe("system_rewards")) {
    for (std::size_t i = 0; i < terms->array_size(); ++i) {
      const Ctx t = terms->element(i);
      env::SystemRewardTerm term;
      const std::string kind = t.child("kind").as_string();
      if (kind == "bus_voltage_violation") {
        term.kind = env::SystemRewardTerm::Kind::BusVoltageViolation;
        term.bus = t.child("bus").as_string();
      } else if (kind == "min_voltage_violation") {
        term.kind = env::SystemRewardTerm::Kind::MinVoltageViolation;
      } else {
        t.fail("unknown system reward kind \"" + kind + "\"");
      }
      term.weight = get_or(t, "weight", cfg.reward_weights.lambda);
      term.v_lower = get_or(t, "v_lower", cfg.band_lower);
      term.v_upper = get_or(t, "v_upper", cfg.band_upper);
      const Ctx who = t.child("agents");
      for (std::size_t k = 0; k < who.array_size(); ++k)
        term.agents.push_back(who.element(k).as_string());
      cfg.system_rewards.push_back(std::move(term));
    }
  }

  parse_trainer(top.child("trainer"), cfg);

  validate_cross_references(cfg, file);
  validate_profiles(cfg, file);
  return cfg;
}

std::string normalized_dump(const ScenarioConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["seed"] = cfg.seed;
  j["horizon"] = cfg.horizon;
  j["dt_minutes"] = cfg.dt_minutes;
  j["voltage_band"] = {{"lower", cfg.band_lower}, {"upper", cfg.band_upper}};
  j["load_power_factor"] = cfg.load_power_factor;
  j["divergence_penalty"] = cfg.divergence_penalty;

  const dev::RewardWeights& rw = cfg.reward_weights;
  j["reward_weights"] = {{"comfort_weight", rw.comfort_weight},
                         {"energy_weight", rw.energy_weight},
                         {"comfort_band_c", {rw.comfort_low_c, rw.comfort_high_c}},
                         {"lambda", rw.lambda},
                         {"peak_threshold_kw", rw.peak_threshold_kw},
                         {"unmet_weight", rw.unmet_weight},
                         {"peak_weight", rw.peak_weight}};

  json buses = json::array();
  std::vector<BusConfig> sorted_buses = cfg.feeder.buses;
  std::sort(sorted_buses.begin(), sorted_buses.end(),
            [](const BusConfig& a, const BusConfig& b) { return a.id < b.id; });
  for (const auto& b : sorted_buses) {
    json bj;
    bj["id"] = b.id;
    if (b.parent) {
      bj["parent"] = *b.parent;
      bj["r_pu"] = b.r_pu;
      bj["x_pu"] = b.x_pu;
    } else {
      bj["slack"] = true;
    }
    if (b.base_load) bj["base_load"] = dump_profile_ref(*b.base_load);
    buses.push_back(std::move(bj));
  }
  j["feeder"] = {{"base_power_kva", cfg.feeder.base_power_kva},
                 {"base_voltage_kv", cfg.feeder.base_voltage_kv},
                 {"slack_voltage_pu", cfg.feeder.slack_voltage_pu},
                 {"buses", std::move(buses)}};

  json agents = json::array();
  std::vector<const AgentConfig*> sorted_agents;
  for (const auto& a : cfg.agents) sorted_agents.push_back(&a);
  std::sort(sorted_agents.begin(), sorted_agents.end(),
            [](const AgentConfig* a, const AgentConfig* b) { return a->id < b->id; });
  for (const AgentConfig* a : sorted_agents) {
    json aj;
    aj["id"] = a->id;
    aj["bus"] = a->bus;
    json mask = json::array();
    if (a->grid_obs.v_comm) mask.push_back("v_comm");
    if (a->grid_obs.v_min) mask.push_back("v_min");
    if (a->grid_obs.v_max) mask.push_back("v_max");
    aj["grid_observation"] = std::move(mask);
    json comps = json::array();
    for (const auto& comp : a->components) comps.push_back(dump_component(comp));
    aj["components"] = std::move(comps);
    agents.push_back(std::move(aj));
  }
  j["agents"] = std::move(agents);

  json terms = json::array();
  for (const auto& term : cfg.system_rewards) {
    json tj;
    tj["kind"] = term.kind == env::SystemRewardTerm::Kind::BusVoltageViolation
                     ? "bus_voltage_violation"
                     : "min_voltage_violation";
    if (term.kind == env::SystemRewardTerm::Kind::BusVoltageViolation)
      tj["bus"] = term.bus;
    tj["weight"] = term.weight;
    tj["v_lower"] = term.v_lower;
    tj["v_upper"] = term.v_upper;
    tj["agents"] = term.agents;
    terms.push_back(std::move(tj));
  }
  j["system_rewards"] = std::move(terms);

  json tr;
  tr["algorithm"] = cfg.trainer.algorithm;
  if (cfg.trainer.algorithm == "maddpg") {
    const train::MaddpgConfig& m = cfg.trainer.maddpg;
    tr["maddpg"] = {{"iterations", m.iterations},
                    {"episodes_per_iteration", m.episodes_per_iteration},
                    {"updates_per_iteration", m.updates_per_iteration},
                    {"batch_size", m.batch_size},
                    {"buffer_capacity", m.buffer_capacity},
                    {"gamma", m.gamma},
                    {"tau", m.tau},
                    {"lr_actor", m.lr_actor},
                    {"lr_critic", m.lr_critic},
                    {"hidden", m.hidden},
                    {"noise_sigma_start", m.noise_sigma_start},
                    {"noise_sigma_end", m.noise_sigma_end},
                    {"noise_anneal_iterations", m.noise_anneal_iterations},
                    {"reward_scale", m.reward_scale},
                    {"checkpoint_every", m.checkpoint_every}};
  } else {
    const train::PpoConfig& p = cfg.trainer.ppo;
    tr["ppo"] = {{"iterations", p.iterations},
                 {"episodes_per_iteration", p.episodes_per_iteration},
                 {"epochs", p.epochs},
                 {"minibatch_size", p.minibatch_size},
                 {"gamma", p.gamma},
                 {"gae_lambda", p.gae_lambda},
                 {"clip_epsilon", p.clip_epsilon},
                 {"value_coef", p.value_coef},
                 {"entropy_coef", p.entropy_coef},
                 {"lr_policy", p.lr_policy},
                 {"lr_value", p.lr_value},
                 {"hidden", p.hidden},
                 {"initial_log_std", p.initial_log_std},
                 {"reward_scale", p.reward_scale},
                 {"checkpoint_every", p.checkpoint_every}};
  }
  j["trainer"] = std::move(tr);

  return j.dump(2) + "\n";
}

}  // namespace gridrl::scenario
