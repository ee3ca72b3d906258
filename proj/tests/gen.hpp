#pragma once

// Hand-rolled generators for property tests. Every generator takes the
// caller's Rng so a failing case can be replayed from its seed.

#include <cstdint>
#include <string>
#include <vector>

#include "iam4vho.hpp"

namespace gen {

using iam4vho::Rng;

inline double real(Rng& rng, double lo, double hi) { return lo + iam4vho::uniform01(rng) * (hi - lo); }

inline std::int64_t integer(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline bool coin(Rng& rng) { return rng() & 1u; }

inline iam4vho::Vec2 point(Rng& rng, double half) { return {real(rng, -half, half), real(rng, -half, half)}; }

inline iam4vho::RatDescriptor rat(Rng& rng, iam4vho::RatId id, double area = 1000.0) {
  iam4vho::RatDescriptor r;
  r.id = id;
  r.kind = iam4vho::kAllRatKinds[static_cast<std::size_t>(integer(rng, 0, 4))];
  r.poa_position = point(rng, area);
  r.coverage_radius = real(rng, 10.0, 800.0);
  r.tx_power = real(rng, 10.0, 46.0);
  r.pathloss_exponent = real(rng, 1.0, 5.0);
  r.ref_distance = real(rng, 0.5, 5.0);
  r.ref_loss = real(rng, 20.0, 60.0);
  r.capacity = integer(rng, 1, 50);
  r.load = integer(rng, 0, r.capacity);
  r.cost = real(rng, 0.0, 5.0);
  r.data_rate = real(rng, 0.1, 100.0);
  r.operator_id = "op-" + std::to_string(integer(rng, 0, 2));
  if (coin(rng)) r.capabilities.insert("qos");
  if (coin(rng)) r.capabilities.insert("ipv6");
  return r;
}

inline std::vector<iam4vho::RatDescriptor> world(Rng& rng, int n, double area = 1000.0) {
  std::vector<iam4vho::RatDescriptor> w;
  for (int i = 0; i < n; ++i) w.push_back(rat(rng, i + 1, area));
  return w;
}

}  // namespace gen

namespace gen {

// Every cell covers the whole roaming box with RSS well above t_down, and every
// user starts attached with enough capacity and addresses, so no link is ever
// lost. Handovers come from scripted preference and manual stimuli.
inline iam4vho::Scenario safe_scenario(Rng& rng) {
  using namespace iam4vho;
  Scenario s;
  s.duration = integer(rng, 3, 8) * kMicrosPerSecond;
  s.scan_period = integer(rng, 5, 20) * 10'000;
  s.snapshot_period = coin(rng) ? kMicrosPerSecond : 0;
  s.decision_delay = integer(rng, 0, 30) * 1000;
  s.rss_noise_db = real(rng, 0.0, 1.0);
  s.priority_list_limit = static_cast<std::size_t>(integer(rng, 0, 2));
  s.timings.auth_delay = integer(rng, 0, 100) * 1000;
  s.timings.dhcp_delay = integer(rng, 0, 100) * 1000;
  s.timings.binding_rtt = integer(rng, 0, 100) * 1000;
  s.timings.flush_rate = real(rng, 50.0, 2000.0);
  s.timings.release_delay = integer(rng, 0, 50) * 1000;
  for (RatKind k : kAllRatKinds) s.thresholds[k] = LinkThresholds{};

  const int n_rats = static_cast<int>(integer(rng, 2, 4));
  for (int i = 0; i < n_rats; ++i) {
    RatDescriptor r;
    r.id = i + 1;
    r.kind = kAllRatKinds[static_cast<std::size_t>(integer(rng, 0, 4))];
    r.poa_position = point(rng, 100.0);
    r.coverage_radius = 2000.0;
    r.tx_power = real(rng, 40.0, 46.0);
    r.pathloss_exponent = 3.0;
    r.ref_distance = 1.0;
    r.ref_loss = 40.0;
    r.capacity = integer(rng, 1, 6);
    r.cost = real(rng, 0.0, 3.0);
    r.data_rate = real(rng, 1.0, 100.0);
    r.operator_id = "op-" + std::to_string(integer(rng, 0, 1));
    if (integer(rng, 0, 3) == 0) r.policy.allowed_operator_ids = {"op-0"};
    if (integer(rng, 0, 5) == 0) r.policy.min_demand = 2;
    r.coa_pool_size = static_cast<std::size_t>(integer(rng, 0, 2));
    s.rats.push_back(r);
  }

  const int n_mus = static_cast<int>(integer(rng, 1, 6));
  for (int i = 0; i < n_mus; ++i) {
    MuSpec m;
    m.user.id = i + 1;
    m.user.position = point(rng, 150.0);
    if (coin(rng)) {
      m.user.mobility_model = MobilityModel::RandomWaypoint;
      m.user.waypoint_params = {{-150.0, -150.0}, {150.0, 150.0}, real(rng, 0.5, 5.0)};
    }
    m.user.preferences = {real(rng, 0, 1), real(rng, 0, 1)};
    m.user.home_operator = "op-" + std::to_string(integer(rng, 0, 1));
    m.user.demand = integer(rng, 1, 3);
    auto& home = s.rats[static_cast<std::size_t>(integer(rng, 0, n_rats - 1))];
    home.capacity += m.user.demand;  // room for the initial attachment
    home.coa_pool_size += 1;
    m.initial_rat = home.id;
    const SimTime start = integer(rng, 0, 100) * 10'000;
    m.traffic = TrafficSpec{real(rng, 10.0, 200.0), start, start + integer(rng, 1, 10) * kMicrosPerSecond};
    s.mus.push_back(m);
  }

  const int n_stim = static_cast<int>(integer(rng, 0, 8));
  for (int i = 0; i < n_stim; ++i) {
    Stimulus st;
    st.time = integer(rng, 0, s.duration / 1000) * 1000;
    st.mu = integer(rng, 1, n_mus);
    if (coin(rng)) {
      st.type = StimulusType::PreferenceChange;
      st.preferences = {real(rng, 0, 1), real(rng, 0, 1)};
    } else {
      st.type = StimulusType::ManualSelection;
      st.rat = integer(rng, 1, n_rats);
    }
    s.stimuli.push_back(st);
  }
  validate_scenario(s);
  return s;
}

// Arbitrary geometry: coverage holes, users crossing cell edges, detached
// users, tiny address pools.
inline iam4vho::Scenario wild_scenario(Rng& rng) {
  using namespace iam4vho;
  Scenario s;
  s.duration = integer(rng, 2, 10) * kMicrosPerSecond;
  s.scan_period = integer(rng, 5, 30) * 10'000;
  s.snapshot_period = integer(rng, 0, 2) * 500'000;
  s.decision_delay = integer(rng, 0, 50) * 1000;
  s.rss_noise_db = coin(rng) ? 0.0 : real(rng, 0.0, 3.0);
  s.priority_list_limit = static_cast<std::size_t>(integer(rng, 0, 3));
  s.timings.auth_delay = integer(rng, 0, 200) * 1000;
  s.timings.dhcp_delay = integer(rng, 0, 200) * 1000;
  s.timings.binding_rtt = integer(rng, 0, 200) * 1000;
  s.timings.flush_rate = real(rng, 20.0, 3000.0);
  s.timings.release_delay = integer(rng, 0, 100) * 1000;
  for (RatKind k : kAllRatKinds) {
    LinkThresholds th;
    th.t_down = real(rng, -100, -90);
    th.t_going_down = th.t_down + real(rng, 1, 15);
    th.t_up = th.t_going_down + real(rng, 0, 10);
    th.hysteresis = real(rng, 0, 4);
    s.thresholds[k] = th;
  }

  const int n_rats = static_cast<int>(integer(rng, 1, 5));
  for (int i = 0; i < n_rats; ++i) {
    RatDescriptor r = rat(rng, i + 1, 300.0);
    r.tx_power = real(rng, 15.0, 46.0);
    r.pathloss_exponent = real(rng, 2.0, 4.0);
    r.ref_distance = 1.0;
    r.ref_loss = 40.0;
    r.coverage_radius = real(rng, 50.0, 600.0);
    r.coa_pool_size = static_cast<std::size_t>(integer(rng, 0, 4));
    if (integer(rng, 0, 3) == 0) r.policy.allowed_operator_ids = {"op-1"};
    if (integer(rng, 0, 4) == 0) r.policy.roaming_allowed["op-0"] = coin(rng);
    s.rats.push_back(r);
  }

  const int n_mus = static_cast<int>(integer(rng, 1, 8));
  for (int i = 0; i < n_mus; ++i) {
    MuSpec m;
    m.user.id = 100 + i;
    m.user.position = point(rng, 400.0);
    switch (integer(rng, 0, 2)) {
      case 0: break;
      case 1:
        m.user.mobility_model = MobilityModel::Linear;
        m.user.velocity = point(rng, 40.0);
        break;
      default:
        m.user.mobility_model = MobilityModel::RandomWaypoint;
        m.user.waypoint_params = {{-400.0, -400.0}, {400.0, 400.0}, real(rng, 1.0, 30.0)};
        break;
    }
    m.user.preferences = {real(rng, 0, 1), real(rng, 0, 1)};
    m.user.home_operator = "op-" + std::to_string(integer(rng, 0, 2));
    m.user.demand = integer(rng, 1, 10);
    if (integer(rng, 0, 4)) m.initial_rat = integer(rng, 1, n_rats);
    if (integer(rng, 0, 4)) {
      const SimTime start = integer(rng, 0, 200) * 10'000;
      m.traffic = TrafficSpec{real(rng, 1.0, 300.0), start, start + integer(rng, 1, 200) * 100'000};
    }
    s.mus.push_back(m);
  }

  const int n_stim = static_cast<int>(integer(rng, 0, 10));
  for (int i = 0; i < n_stim; ++i) {
    Stimulus st;
    st.time = integer(rng, 0, s.duration / 1000) * 1000;
    st.mu = 100 + integer(rng, 0, n_mus - 1);
    if (coin(rng)) {
      st.type = StimulusType::PreferenceChange;
      st.preferences = {real(rng, 0, 1), real(rng, 0, 1)};
    } else {
      st.type = StimulusType::ManualSelection;
      st.rat = integer(rng, 1, n_rats);
    }
    s.stimuli.push_back(st);
  }
  validate_scenario(s);
  return s;
}

}  // namespace gen

namespace gen {

// Loaded-capacity world for comparing full and truncated priority lists:
// every user sits on a shared anchor cell (never a candidate, since it is
// serving), demands one unit and receives exactly one preference stimulus, so
// the same sessions arrive in the same order under both list lengths and
// target loads only grow.
inline iam4vho::Scenario loaded_scenario(Rng& rng) {
  using namespace iam4vho;
  Scenario s;
  s.duration = 6 * kMicrosPerSecond;
  s.decision_delay = integer(rng, 0, 20) * 1000;
  s.timings.auth_delay = 20'000;
  s.timings.dhcp_delay = 20'000;
  s.timings.binding_rtt = 20'000;
  for (RatKind k : kAllRatKinds) s.thresholds[k] = LinkThresholds{};

  const int n_mus = static_cast<int>(integer(rng, 8, 24));
  RatDescriptor anchor;
  anchor.id = 1;
  anchor.kind = RatKind::UMTS;
  anchor.coverage_radius = 3000;
  anchor.tx_power = 46;
  anchor.pathloss_exponent = 3;
  anchor.ref_loss = 40;
  anchor.capacity = n_mus;
  anchor.cost = 1;
  anchor.data_rate = 2;
  anchor.coa_pool_size = static_cast<std::size_t>(n_mus);
  s.rats.push_back(anchor);

  const int n_targets = static_cast<int>(integer(rng, 2, 4));
  for (int i = 0; i < n_targets; ++i) {
    RatDescriptor r = anchor;
    r.id = i + 2;
    r.kind = kAllRatKinds[static_cast<std::size_t>(integer(rng, 0, 4))];
    r.poa_position = point(rng, 100);
    r.coverage_radius = 2000;
    r.tx_power = 44;
    r.capacity = integer(rng, 1, 5);
    r.load = integer(rng, 0, r.capacity - 1);
    r.cost = real(rng, 0, 3);
    r.data_rate = real(rng, 1, 100);
    if (integer(rng, 0, 3) == 0) r.policy.allowed_operator_ids = {"op-0"};
    s.rats.push_back(r);
  }

  for (int i = 0; i < n_mus; ++i) {
    MuSpec m;
    m.user.id = i + 1;
    m.user.position = point(rng, 150);
    m.user.home_operator = "op-" + std::to_string(integer(rng, 0, 1));
    m.user.demand = 1;
    m.initial_rat = 1;
    s.mus.push_back(m);

    Stimulus st;
    st.time = integer(rng, 0, 5000) * 1000;
    st.mu = m.user.id;
    st.type = StimulusType::PreferenceChange;
    st.preferences = {real(rng, 0, 1), real(rng, 0, 1)};
    s.stimuli.push_back(st);
  }
  validate_scenario(s);
  return s;
}

}  // namespace gen
