#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "iam4vho/core.hpp"
#include "iam4vho/execution.hpp"
#include "iam4vho/mih.hpp"
#include "iam4vho/radio_env.hpp"

namespace iam4vho {

struct TrafficSpec {
  double rate_pps = 100.0;
  SimTime start = 0;
  SimTime stop = 0;
};

struct MuSpec {
  MobileUser user;
  std::optional<RatId> initial_rat;
  std::optional<TrafficSpec> traffic;
};

enum class StimulusType { PreferenceChange, ManualSelection };

struct Stimulus {
  SimTime time = 0;
  MuId mu = 0;
  StimulusType type = StimulusType::PreferenceChange;
  PreferenceWeights preferences;  // PreferenceChange
  RatId rat = 0;                  // ManualSelection
};

struct Scenario {
  std::vector<RatDescriptor> rats;
  std::vector<MuSpec> mus;
  std::map<RatKind, LinkThresholds> thresholds;
  ExecutionTimings timings;
  SimTime decision_delay = 10'000;
  std::vector<Stimulus> stimuli;
  SimTime duration = 0;
  SimTime scan_period = 100'000;
  SimTime snapshot_period = 1'000'000;
  std::size_t priority_list_limit = 0;  // 0: keep the full list
  double rss_noise_db = 0.0;

  const RatDescriptor* find_rat(RatId id) const {
    for (const auto& r : rats) {
      if (r.id == id) return &r;
    }
    return nullptr;
  }
  const MuSpec* find_mu(MuId id) const {
    for (const auto& m : mus) {
      if (m.user.id == id) return &m;
    }
    return nullptr;
  }
};

//-----------------------------------------------------------------------------
// Validation
//-----------------------------------------------------------------------------

namespace detail {

inline void check(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ValidationError(path, what);
}

inline void check_finite(double v, const std::string& path) {
  check(std::isfinite(v), path, "must be finite");
}

}  // namespace detail

// Checks every declared invariant; the first violation is reported with its
// field path.
inline void validate_scenario(const Scenario& s) {
  using detail::check;
  using detail::check_finite;

  check(s.duration > 0, "duration_s", "must be > 0");
  check(s.scan_period > 0, "scan_period_s", "must be > 0");
  check(s.snapshot_period >= 0, "snapshot_period_s", "must be >= 0");
  check(s.decision_delay >= 0, "decision_delay_s", "must be >= 0");
  check_finite(s.rss_noise_db, "rss_noise_db");
  check(s.rss_noise_db >= 0.0, "rss_noise_db", "must be >= 0");

  const auto& t = s.timings;
  check(t.auth_delay >= 0, "timings.auth_delay_s", "must be >= 0");
  check(t.dhcp_delay >= 0, "timings.dhcp_delay_s", "must be >= 0");
  check(t.binding_rtt >= 0, "timings.binding_rtt_s", "must be >= 0");
  check(t.release_delay >= 0, "timings.release_delay_s", "must be >= 0");
  check_finite(t.flush_rate, "timings.flush_rate_pps");
  check(t.flush_rate > 0.0, "timings.flush_rate_pps", "must be > 0");

  for (const auto& [kind, th] : s.thresholds) {
    const std::string p = "thresholds." + std::string(to_string(kind));
    check_finite(th.t_down, p + ".t_down_dbm");
    check_finite(th.t_going_down, p + ".t_going_down_dbm");
    check_finite(th.t_up, p + ".t_up_dbm");
    check_finite(th.hysteresis, p + ".hysteresis_db");
    check(th.t_down < th.t_going_down, p + ".t_down_dbm", "must be below t_going_down_dbm");
    check(th.t_going_down <= th.t_up, p + ".t_going_down_dbm", "must not exceed t_up_dbm");
    check(th.hysteresis >= 0.0, p + ".hysteresis_db", "must be >= 0");
  }

  std::set<RatId> rat_ids;
  for (std::size_t i = 0; i < s.rats.size(); ++i) {
    const auto& r = s.rats[i];
    const std::string p = "rats[" + std::to_string(i) + "]";
    check(rat_ids.insert(r.id).second, p + ".id", "duplicate rat id " + std::to_string(r.id));
    check(s.thresholds.contains(r.kind), p + ".kind",
          "no thresholds configured for " + std::string(to_string(r.kind)));
    check_finite(r.poa_position.x, p + ".position_m");
    check_finite(r.poa_position.y, p + ".position_m");
    check_finite(r.coverage_radius, p + ".radius_m");
    check(r.coverage_radius > 0.0, p + ".radius_m", "must be > 0");
    check_finite(r.tx_power, p + ".tx_power_dbm");
    check_finite(r.pathloss_exponent, p + ".pathloss_exponent");
    check(r.pathloss_exponent >= 1.0, p + ".pathloss_exponent", "must be >= 1");
    check_finite(r.ref_distance, p + ".ref_distance_m");
    check(r.ref_distance > 0.0, p + ".ref_distance_m", "must be > 0");
    check_finite(r.ref_loss, p + ".ref_loss_db");
    check(r.capacity > 0, p + ".capacity_units", "must be > 0");
    check(r.load >= 0, p + ".load_units", "must be >= 0");
    check(r.load <= r.capacity, p + ".load_units", "must not exceed capacity_units");
    check_finite(r.cost, p + ".cost");
    check(r.cost >= 0.0, p + ".cost", "must be >= 0");
    check_finite(r.data_rate, p + ".data_rate_mbps");
    check(r.data_rate > 0.0, p + ".data_rate_mbps", "must be > 0");
    check(r.policy.min_demand >= 0, p + ".policy.min_demand_units", "must be >= 0");
  }

  std::set<MuId> mu_ids;
  for (std::size_t i = 0; i < s.mus.size(); ++i) {
    const auto& m = s.mus[i];
    const auto& u = m.user;
    const std::string p = "mus[" + std::to_string(i) + "]";
    check(mu_ids.insert(u.id).second, p + ".id", "duplicate mu id " + std::to_string(u.id));
    check_finite(u.position.x, p + ".position_m");
    check_finite(u.position.y, p + ".position_m");
    check_finite(u.velocity.x, p + ".velocity_mps");
    check_finite(u.velocity.y, p + ".velocity_mps");
    if (u.mobility_model == MobilityModel::RandomWaypoint) {
      const auto& w = u.waypoint_params;
      check(std::isfinite(w.area_min.x) && std::isfinite(w.area_min.y) &&
                std::isfinite(w.area_max.x) && std::isfinite(w.area_max.y),
            p + ".waypoint_area_m", "must be finite");
      check(w.area_min.x <= w.area_max.x && w.area_min.y <= w.area_max.y, p + ".waypoint_area_m",
            "min must not exceed max");
      check(std::isfinite(w.speed) && w.speed > 0.0, p + ".speed_mps", "must be > 0");
    }
    const auto& pr = u.preferences;
    check(pr.weight_rate >= 0.0 && pr.weight_rate <= 1.0, p + ".preferences.weight_rate",
          "must be in [0, 1]");
    check(pr.weight_cost >= 0.0 && pr.weight_cost <= 1.0, p + ".preferences.weight_cost",
          "must be in [0, 1]");
    check(u.demand > 0, p + ".demand_units", "must be > 0");
    if (m.initial_rat) {
      check(rat_ids.contains(*m.initial_rat), p + ".initial_rat",
            "unknown rat id " + std::to_string(*m.initial_rat));
    }
    if (m.traffic) {
      check(std::isfinite(m.traffic->rate_pps) && m.traffic->rate_pps > 0.0,
            p + ".traffic.rate_pps", "must be > 0");
      check(m.traffic->start >= 0, p + ".traffic.start_s", "must be >= 0");
      check(m.traffic->start < m.traffic->stop, p + ".traffic.stop_s", "must be after start_s");
    }
  }

  for (std::size_t i = 0; i < s.stimuli.size(); ++i) {
    const auto& st = s.stimuli[i];
    const std::string p = "stimuli[" + std::to_string(i) + "]";
    check(st.time >= 0 && st.time <= s.duration, p + ".time_s", "must lie within [0, duration_s]");
    check(mu_ids.contains(st.mu), p + ".mu", "unknown mu id " + std::to_string(st.mu));
    if (st.type == StimulusType::ManualSelection) {
      check(rat_ids.contains(st.rat), p + ".rat", "unknown rat id " + std::to_string(st.rat));
    } else {
      check(st.preferences.weight_rate >= 0.0 && st.preferences.weight_rate <= 1.0,
            p + ".preferences.weight_rate", "must be in [0, 1]");
      check(st.preferences.weight_cost >= 0.0 && st.preferences.weight_cost <= 1.0,
            p + ".preferences.weight_cost", "must be in [0, 1]");
    }
  }
}

//-----------------------------------------------------------------------------
// JSON parsing
//-----------------------------------------------------------------------------

namespace detail {

using nlohmann::json;

class Obj {
 public:
  Obj(const json& j, std::string path, std::set<std::string> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(where(), "expected an object");
    for (const auto& [key, value] : j_.items()) {
      if (!allowed.contains(key)) throw ValidationError(child(key), "unknown field");
    }
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key); }
  const json& at(const std::string& key) const {
    if (!j_.contains(key)) throw ValidationError(child(key), "missing required field");
    return j_.at(key);
  }

  double number(const std::string& key) const { return as_number(at(key), child(key)); }
  double number(const std::string& key, double dflt) const { return has(key) ? number(key) : dflt; }

  std::int64_t integer(const std::string& key) const { return as_integer(at(key), child(key)); }
  std::int64_t integer(const std::string& key, std::int64_t dflt) const {
    return has(key) ? integer(key) : dflt;
  }

  std::string string(const std::string& key, const std::string& dflt = {}) const {
    if (!has(key)) return dflt;
    const json& v = at(key);
    if (!v.is_string()) throw ValidationError(child(key), "expected a string");
    return v.get<std::string>();
  }

  SimTime seconds(const std::string& key) const {
    const double v = number(key);
    if (!std::isfinite(v) || std::fabs(v) > 1e9) throw ValidationError(child(key), "out of range");
    return seconds_to_time(v);
  }
  SimTime seconds(const std::string& key, SimTime dflt) const { return has(key) ? seconds(key) : dflt; }

  Vec2 point(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_array() || v.size() != 2) throw ValidationError(child(key), "expected [x, y]");
    return {as_number(v[0], child(key) + "[0]"), as_number(v[1], child(key) + "[1]")};
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ValidationError(path, "expected a number");
    return v.get<double>();
  }
  static std::int64_t as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ValidationError(path, "expected an integer");
    return v.get<std::int64_t>();
  }

 private:
  std::string where() const { return path_.empty() ? "<root>" : path_; }
  const json& j_;
  std::string path_;
};

inline const json& array_at(const Obj& o, const std::string& key) {
  const json& v = o.at(key);
  if (!v.is_array()) throw ValidationError(o.child(key), "expected an array");
  return v;
}

inline PreferenceWeights parse_preferences(const json& j, const std::string& path) {
  Obj o(j, path, {"weight_rate", "weight_cost"});
  PreferenceWeights w;
  w.weight_rate = o.number("weight_rate", w.weight_rate);
  w.weight_cost = o.number("weight_cost", w.weight_cost);
  return w;
}

inline PolicyRule parse_policy(const json& j, const std::string& path) {
  Obj o(j, path, {"allowed_operators", "roaming", "min_demand_units"});
  PolicyRule rule;
  if (o.has("allowed_operators")) {
    const json& arr = array_at(o, "allowed_operators");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_string()) {
        throw ValidationError(o.child("allowed_operators") + "[" + std::to_string(i) + "]",
                              "expected a string");
      }
      rule.allowed_operator_ids.insert(arr[i].get<std::string>());
    }
  }
  if (o.has("roaming")) {
    const json& r = o.at("roaming");
    if (!r.is_object()) throw ValidationError(o.child("roaming"), "expected an object");
    for (const auto& [op, allowed] : r.items()) {
      if (!allowed.is_boolean()) throw ValidationError(o.child("roaming") + "." + op, "expected a boolean");
      rule.roaming_allowed[op] = allowed.get<bool>();
    }
  }
  rule.min_demand = o.integer("min_demand_units", 0);
  return rule;
}

inline RatDescriptor parse_rat(const json& j, const std::string& path) {
  Obj o(j, path,
        {"id", "kind", "position_m", "radius_m", "tx_power_dbm", "pathloss_exponent",
         "ref_distance_m", "ref_loss_db", "capacity_units", "load_units", "cost",
         "data_rate_mbps", "operator", "policy", "capabilities", "coa_pool_size"});
  RatDescriptor r;
  r.id = o.integer("id");
  const std::string kind = o.string("kind");
  auto k = parse_rat_kind(kind);
  if (!k) throw ValidationError(o.child("kind"), "unknown RAT kind '" + kind + "'");
  r.kind = *k;
  r.poa_position = o.point("position_m");
  r.coverage_radius = o.number("radius_m");
  r.tx_power = o.number("tx_power_dbm", 20.0);
  r.pathloss_exponent = o.number("pathloss_exponent", 3.0);
  r.ref_distance = o.number("ref_distance_m", 1.0);
  r.ref_loss = o.number("ref_loss_db", 40.0);
  r.capacity = o.integer("capacity_units");
  r.load = o.integer("load_units", 0);
  r.cost = o.number("cost", 0.0);
  r.data_rate = o.number("data_rate_mbps", 1.0);
  r.operator_id = o.string("operator");
  if (o.has("policy")) r.policy = parse_policy(o.at("policy"), o.child("policy"));
  if (o.has("capabilities")) {
    const json& arr = array_at(o, "capabilities");
    for (const auto& c : arr) {
      if (!c.is_string()) throw ValidationError(o.child("capabilities"), "expected strings");
      r.capabilities.insert(c.get<std::string>());
    }
  }
  const std::int64_t pool = o.integer("coa_pool_size", 256);
  if (pool < 0) throw ValidationError(o.child("coa_pool_size"), "must be >= 0");
  r.coa_pool_size = static_cast<std::size_t>(pool);
  return r;
}

inline MuSpec parse_mu(const json& j, const std::string& path) {
  Obj o(j, path,
        {"id", "position_m", "mobility", "velocity_mps", "waypoint_area_m", "speed_mps",
         "preferences", "home_operator", "demand_units", "initial_rat", "traffic"});
  MuSpec m;
  auto& u = m.user;
  u.id = o.integer("id");
  u.position = o.point("position_m");
  const std::string mob = o.string("mobility", "stationary");
  if (mob == "stationary") {
    u.mobility_model = MobilityModel::Stationary;
  } else if (mob == "linear") {
    u.mobility_model = MobilityModel::Linear;
  } else if (mob == "random_waypoint") {
    u.mobility_model = MobilityModel::RandomWaypoint;
  } else {
    throw ValidationError(o.child("mobility"), "unknown mobility model '" + mob + "'");
  }
  if (o.has("velocity_mps")) u.velocity = o.point("velocity_mps");
  if (u.mobility_model == MobilityModel::RandomWaypoint) {
    Obj area(o.at("waypoint_area_m"), o.child("waypoint_area_m"), {"min", "max"});
    u.waypoint_params.area_min = area.point("min");
    u.waypoint_params.area_max = area.point("max");
    u.waypoint_params.speed = o.number("speed_mps");
  }
  if (o.has("preferences")) u.preferences = parse_preferences(o.at("preferences"), o.child("preferences"));
  u.home_operator = o.string("home_operator");
  u.demand = o.integer("demand_units", 1);
  if (o.has("initial_rat")) m.initial_rat = o.integer("initial_rat");
  if (o.has("traffic")) {
    Obj t(o.at("traffic"), o.child("traffic"), {"rate_pps", "start_s", "stop_s"});
    TrafficSpec spec;
    spec.rate_pps = t.number("rate_pps");
    spec.start = t.seconds("start_s", 0);
    spec.stop = t.seconds("stop_s");
    m.traffic = spec;
  }
  return m;
}

inline Stimulus parse_stimulus(const json& j, const std::string& path) {
  Obj o(j, path, {"time_s", "mu", "type", "preferences", "rat"});
  Stimulus s;
  s.time = o.seconds("time_s");
  s.mu = o.integer("mu");
  const std::string type = o.string("type");
  if (type == "preference_change") {
    s.type = StimulusType::PreferenceChange;
    s.preferences = parse_preferences(o.at("preferences"), o.child("preferences"));
  } else if (type == "manual_selection") {
    s.type = StimulusType::ManualSelection;
    s.rat = o.integer("rat");
  } else {
    throw ValidationError(o.child("type"), "unknown stimulus type '" + type + "'");
  }
  return s;
}

}  // namespace detail

inline Scenario parse_scenario(const nlohmann::json& j) {
  using detail::Obj;
  Obj root(j, "",
           {"duration_s", "scan_period_s", "snapshot_period_s", "decision_delay_s",
            "priority_list_limit", "rss_noise_db", "timings", "thresholds", "rats", "mus",
            "stimuli"});
  Scenario s;
  s.duration = root.seconds("duration_s");
  s.scan_period = root.seconds("scan_period_s", s.scan_period);
  s.snapshot_period = root.seconds("snapshot_period_s", s.snapshot_period);
  s.decision_delay = root.seconds("decision_delay_s", s.decision_delay);
  const std::int64_t limit = root.integer("priority_list_limit", 0);
  if (limit < 0) throw ValidationError("priority_list_limit", "must be >= 0");
  s.priority_list_limit = static_cast<std::size_t>(limit);
  s.rss_noise_db = root.number("rss_noise_db", 0.0);

  if (root.has("timings")) {
    Obj t(root.at("timings"), "timings",
          {"auth_delay_s", "dhcp_delay_s", "binding_rtt_s", "flush_rate_pps", "release_delay_s"});
    s.timings.auth_delay = t.seconds("auth_delay_s", 0);
    s.timings.dhcp_delay = t.seconds("dhcp_delay_s", 0);
    s.timings.binding_rtt = t.seconds("binding_rtt_s", 0);
    s.timings.flush_rate = t.number("flush_rate_pps", s.timings.flush_rate);
    s.timings.release_delay = t.seconds("release_delay_s", 0);
  }

  const auto& th = root.at("thresholds");
  if (!th.is_object()) throw ValidationError("thresholds", "expected an object");
  for (const auto& [kind_name, value] : th.items()) {
    const std::string p = "thresholds." + kind_name;
    auto kind = parse_rat_kind(kind_name);
    if (!kind) throw ValidationError(p, "unknown RAT kind");
    Obj o(value, p, {"t_down_dbm", "t_going_down_dbm", "t_up_dbm", "hysteresis_db"});
    LinkThresholds lt;
    lt.t_down = o.number("t_down_dbm");
    lt.t_going_down = o.number("t_going_down_dbm");
    lt.t_up = o.number("t_up_dbm");
    lt.hysteresis = o.number("hysteresis_db", 0.0);
    s.thresholds[*kind] = lt;
  }

  const auto& rats = detail::array_at(root, "rats");
  for (std::size_t i = 0; i < rats.size(); ++i) {
    s.rats.push_back(detail::parse_rat(rats[i], "rats[" + std::to_string(i) + "]"));
  }
  const auto& mus = detail::array_at(root, "mus");
  for (std::size_t i = 0; i < mus.size(); ++i) {
    s.mus.push_back(detail::parse_mu(mus[i], "mus[" + std::to_string(i) + "]"));
  }
  if (root.has("stimuli")) {
    const auto& st = detail::array_at(root, "stimuli");
    for (std::size_t i = 0; i < st.size(); ++i) {
      s.stimuli.push_back(detail::parse_stimulus(st[i], "stimuli[" + std::to_string(i) + "]"));
    }
  }

  validate_scenario(s);
  return s;
}

struct ParseError : Error {
  using Error::Error;
};

inline Scenario parse_scenario_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("scenario parse error: ") + e.what());
  }
  return parse_scenario(j);
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

}  // namespace iam4vho
