#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "iam4vho/trace.hpp"

namespace iam4vho {

struct HandoverLatency {
  SessionId session = 0;
  MuId mu = 0;
  SimTime start = 0;
  SimTime end = 0;
  double latency_s = 0.0;
};

struct MetricsReport {
  std::int64_t packets_generated = 0;
  std::int64_t packets_delivered = 0;
  std::int64_t packets_lost = 0;
  std::int64_t packets_in_flight = 0;
  double loss_ratio = 0.0;

  std::vector<HandoverLatency> handovers;
  double mean_latency_s = 0.0;
  double max_latency_s = 0.0;

  std::int64_t sessions_total = 0;
  std::int64_t sessions_rejected = 0;
  double rejection_probability = 0.0;

  double mean_wait_imperative_s = 0.0;
  double mean_wait_alternative_s = 0.0;

  bool conserved() const {
    return packets_generated == packets_delivered + packets_lost + packets_in_flight;
  }
};

// Longest reception gap of one MU that overlaps [start, end], in excess of the
// nominal CBR spacing. `deliveries` must be sorted.
inline SimTime reception_gap(const std::vector<SimTime>& deliveries, SimTime start, SimTime end,
                             SimTime nominal, SimTime stream_begin, SimTime stream_end) {
  SimTime worst = 0;
  SimTime prev = stream_begin - nominal;  // virtual delivery before the first packet
  auto consider = [&](SimTime a, SimTime b) {
    if (a < end && b > start) worst = std::max(worst, b - a - nominal);
  };
  for (SimTime d : deliveries) {
    consider(prev, d);
    prev = d;
  }
  if (prev < stream_end) consider(prev, stream_end);
  return worst;
}

// Derives every metric from the trace alone: packet fates, session
// transitions and the per-MU delivery timeline.
inline MetricsReport collect_metrics(const EventTrace& trace) {
  MetricsReport m;

  struct Stream {
    SimTime nominal = 0;
    SimTime begin = 0;
    SimTime end = 0;
  };
  std::map<MuId, Stream> streams;
  std::map<MuId, std::vector<SimTime>> deliveries;
  struct Interval {
    MuId mu = 0;
    SimTime start = 0;
    std::optional<SimTime> end;
  };
  std::map<SessionId, Interval> handovers;
  double wait_sum[2] = {0.0, 0.0};
  std::int64_t wait_n[2] = {0, 0};

  for (const auto& rec : trace.records) {
    if (const auto* d = std::get_if<DispatchRecord>(&rec.body)) {
      if (d->event == "PacketArrival") ++m.packets_generated;
    } else if (const auto* t = std::get_if<TrafficRecord>(&rec.body)) {
      Stream s;
      s.nominal = static_cast<SimTime>(std::ceil(static_cast<double>(kMicrosPerSecond) / t->rate_pps));
      s.begin = t->start;
      s.end = std::min(t->stop, trace.end_time);
      streams[t->mu] = s;
    } else if (const auto* p = std::get_if<PacketRecord>(&rec.body)) {
      switch (p->packet.status) {
        case PacketStatus::Delivered:
          ++m.packets_delivered;
          deliveries[p->packet.mu].push_back(*p->packet.delivered_at);
          break;
        case PacketStatus::Dropped: ++m.packets_lost; break;
        case PacketStatus::InFlight: ++m.packets_in_flight; break;
      }
    } else if (std::holds_alternative<SessionCreatedRecord>(rec.body)) {
      ++m.sessions_total;
    } else if (const auto* tr = std::get_if<TransitionRecord>(&rec.body)) {
      if (tr->to == SessionState::Rejected) ++m.sessions_rejected;
      if (tr->to == SessionState::Executing) handovers[tr->session] = {tr->mu, rec.time, {}};
      if (tr->from == SessionState::Executing) {
        auto it = handovers.find(tr->session);
        if (it != handovers.end()) it->second.end = rec.time;
      }
    } else if (const auto* dq = std::get_if<DequeueRecord>(&rec.body)) {
      const int k = priority_rank(dq->session_class);
      wait_sum[k] += time_to_seconds(rec.time - dq->arrival);
      ++wait_n[k];
    }
  }

  if (m.packets_generated > 0) {
    m.loss_ratio = static_cast<double>(m.packets_lost) / static_cast<double>(m.packets_generated);
  }
  if (m.sessions_total > 0) {
    m.rejection_probability =
        static_cast<double>(m.sessions_rejected) / static_cast<double>(m.sessions_total);
  }
  if (wait_n[0]) m.mean_wait_imperative_s = wait_sum[0] / static_cast<double>(wait_n[0]);
  if (wait_n[1]) m.mean_wait_alternative_s = wait_sum[1] / static_cast<double>(wait_n[1]);

  for (auto& [mu, times] : deliveries) std::sort(times.begin(), times.end());

  double sum = 0.0;
  for (const auto& [session, iv] : handovers) {
    HandoverLatency h;
    h.session = session;
    h.mu = iv.mu;
    h.start = iv.start;
    h.end = iv.end.value_or(trace.end_time);
    auto st = streams.find(iv.mu);
    if (st != streams.end()) {
      static const std::vector<SimTime> kNone;
      auto dv = deliveries.find(iv.mu);
      const auto& times = dv == deliveries.end() ? kNone : dv->second;
      h.latency_s = time_to_seconds(reception_gap(times, h.start, h.end, st->second.nominal,
                                                  st->second.begin, st->second.end));
    }
    sum += h.latency_s;
    m.max_latency_s = std::max(m.max_latency_s, h.latency_s);
    m.handovers.push_back(h);
  }
  if (!m.handovers.empty()) m.mean_latency_s = sum / static_cast<double>(m.handovers.size());
  return m;
}

}  // namespace iam4vho
