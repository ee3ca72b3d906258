#pragma once

// Small programmatic scenarios shared by the engine-level tests.

#include <vector>

#include "iam4vho.hpp"

namespace fixture {

using namespace iam4vho;

inline LinkThresholds thresholds() { return {-95.0, -85.0, -80.0, 2.0}; }

inline RatDescriptor cell(RatId id, RatKind kind, Vec2 pos, double radius, Bandwidth capacity = 100) {
  RatDescriptor r;
  r.id = id;
  r.kind = kind;
  r.poa_position = pos;
  r.coverage_radius = radius;
  r.tx_power = 20.0;
  r.pathloss_exponent = 3.0;
  r.ref_distance = 1.0;
  r.ref_loss = 40.0;
  r.capacity = capacity;
  r.cost = 1.0;
  r.data_rate = 10.0;
  r.operator_id = "op";
  return r;
}

inline MuSpec user(MuId id, Vec2 pos, std::optional<RatId> rat, double rate_pps, SimTime stop) {
  MuSpec m;
  m.user.id = id;
  m.user.position = pos;
  m.user.home_operator = "op";
  m.user.demand = 1;
  m.initial_rat = rat;
  if (rate_pps > 0) m.traffic = TrafficSpec{rate_pps, 0, stop};
  return m;
}

// Two overlapping cells, one stationary user on cell 1 with CBR traffic and a
// manual switch to cell 2 at `switch_at`. The old link stays up throughout.
inline Scenario manual_switch(const ExecutionTimings& t, SimTime switch_at, double rate_pps = 100.0,
                              SimTime duration = 3 * kMicrosPerSecond) {
  Scenario s;
  s.duration = duration;
  s.timings = t;
  s.decision_delay = 0;
  s.snapshot_period = 0;
  s.thresholds = {{RatKind::WiFi, thresholds()}, {RatKind::WiMAX, thresholds()}};
  s.rats = {cell(1, RatKind::WiFi, {0, 0}, 200), cell(2, RatKind::WiMAX, {30, 0}, 200)};
  s.mus = {user(1, {10, 0}, 1, rate_pps, duration)};
  Stimulus st;
  st.time = switch_at;
  st.mu = 1;
  st.type = StimulusType::ManualSelection;
  st.rat = 2;
  s.stimuli = {st};
  validate_scenario(s);
  return s;
}

inline ExecutionTimings timings_ms(int auth, int dhcp, int binding, double flush_rate = 1000.0,
                                   int release = 0) {
  ExecutionTimings t;
  t.auth_delay = auth * 1000;
  t.dhcp_delay = dhcp * 1000;
  t.binding_rtt = binding * 1000;
  t.flush_rate = flush_rate;
  t.release_delay = release * 1000;
  return t;
}

struct PacketView {
  std::vector<Packet> final;  // last record per (mu, seq)
};

// Final fate of every packet, from the trace alone.
inline std::map<std::pair<MuId, std::int64_t>, Packet> packet_fates(const EventTrace& trace) {
  std::map<std::pair<MuId, std::int64_t>, Packet> out;
  for (const auto& r : trace.records) {
    if (const auto* p = std::get_if<PacketRecord>(&r.body)) out[{p->packet.mu, p->packet.seq_no}] = p->packet;
  }
  return out;
}

inline std::vector<SimTime> transition_times(const EventTrace& trace, SessionState to) {
  std::vector<SimTime> out;
  for (const auto& r : trace.records) {
    if (const auto* t = std::get_if<TransitionRecord>(&r.body); t && t->to == to) out.push_back(r.time);
  }
  return out;
}

inline std::vector<SimTime> exec_step_times(const EventTrace& trace, std::string_view step) {
  std::vector<SimTime> out;
  for (const auto& r : trace.records) {
    if (const auto* e = std::get_if<ExecStepRecord>(&r.body); e && e->step == step) out.push_back(r.time);
  }
  return out;
}

}  // namespace fixture
