#pragma once

#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iam4vho/core.hpp"
#include "iam4vho/decision.hpp"
#include "iam4vho/mih.hpp"
#include "iam4vho/radio_env.hpp"

namespace iam4vho {

enum class PacketPath { Old, Buffered, New };
enum class PacketStatus { InFlight, Delivered, Dropped };

inline std::string_view to_string(PacketPath p) {
  switch (p) {
    case PacketPath::Old: return "old";
    case PacketPath::Buffered: return "buffered";
    case PacketPath::New: return "new";
  }
  return "?";
}

inline std::string_view to_string(PacketStatus s) {
  switch (s) {
    case PacketStatus::InFlight: return "in_flight";
    case PacketStatus::Delivered: return "delivered";
    case PacketStatus::Dropped: return "dropped";
  }
  return "?";
}

struct Packet {
  MuId mu = 0;
  std::int64_t seq_no = 0;
  SimTime created_at = 0;
  std::optional<SimTime> delivered_at;
  PacketPath path = PacketPath::Old;
  PacketStatus status = PacketStatus::InFlight;
};

struct ExecutionTimings {
  SimTime auth_delay = 0;
  SimTime dhcp_delay = 0;
  SimTime binding_rtt = 0;
  double flush_rate = 1000.0;  // packets/s
  SimTime release_delay = 0;
};

// Offset of the i-th packet served by a channel running at `rate` packets/s.
inline SimTime service_offset(std::size_t i, double rate) {
  return static_cast<SimTime>(
      std::llround(static_cast<double>(i) * static_cast<double>(kMicrosPerSecond) / rate));
}

//-----------------------------------------------------------------------------
// DHCP care-of addresses
//-----------------------------------------------------------------------------

struct CareOfAddress {
  std::string value;
  RatId rat = 0;
  std::size_t index = 0;
  SimTime allocated_at = 0;

  friend bool operator==(const CareOfAddress&, const CareOfAddress&) = default;
};

// One pool per RAT; always hands out the lowest free index.
class CoaPool {
 public:
  CoaPool() = default;
  CoaPool(RatId rat, std::size_t size) : rat_(rat), live_(size, false) {}

  RatId rat() const { return rat_; }
  std::size_t size() const { return live_.size(); }

  std::size_t live_count() const {
    std::size_t n = 0;
    for (bool b : live_) n += b ? 1 : 0;
    return n;
  }

  bool is_live(const CareOfAddress& coa) const {
    return coa.rat == rat_ && coa.index < live_.size() && live_[coa.index] &&
           owners_.at(coa.index) == coa.value;
  }

  void release(const CareOfAddress& coa) {
    if (!is_live(coa)) throw IllegalState("release of non-live care-of address " + coa.value);
    live_[coa.index] = false;
    owners_.erase(coa.index);
  }

 private:
  friend CareOfAddress allocate_coa(CoaPool& pool, SessionId session, SimTime now);

  RatId rat_ = 0;
  std::vector<bool> live_;
  std::map<std::size_t, std::string> owners_;
};

inline std::string format_coa(RatId rat, std::size_t index) {
  return "coa-" + std::to_string(rat) + "-" + std::to_string(index);
}

inline CareOfAddress allocate_coa(CoaPool& pool, SessionId /*session*/, SimTime now) {
  for (std::size_t i = 0; i < pool.live_.size(); ++i) {
    if (!pool.live_[i]) {
      pool.live_[i] = true;
      CareOfAddress coa{format_coa(pool.rat_, i), pool.rat_, i, now};
      pool.owners_[i] = coa.value;
      return coa;
    }
  }
  throw NoAddressAvailable(pool.rat_);
}

//-----------------------------------------------------------------------------
// Home agent
//-----------------------------------------------------------------------------

// Per-session downlink buffer plus the mu -> care-of address bindings.
//
// While buffering, a packet still goes down the old path as long as the old
// link has not been reported down; once the link is reported down, or once
// anything has been buffered, packets queue here so that delivery order is
// preserved.
class HomeAgent {
 public:
  enum class Route { OldPath, Buffer, Direct };

  void begin_buffering(SessionId session, MuId mu) {
    if (sessions_.contains(session)) {
      throw IllegalState("begin_buffering: session " + std::to_string(session) +
                         " already buffering");
    }
    if (by_mu_.contains(mu)) {
      throw IllegalState("begin_buffering: mu " + std::to_string(mu) + " already buffering");
    }
    sessions_[session] = {mu, {}};
    by_mu_[mu] = session;
  }

  bool buffering(SessionId session) const { return sessions_.contains(session); }

  std::optional<SessionId> buffering_session(MuId mu) const {
    auto it = by_mu_.find(mu);
    if (it == by_mu_.end()) return std::nullopt;
    return it->second;
  }

  Route route(MuId mu, bool old_link_reported_up) const {
    auto s = buffering_session(mu);
    if (!s) return Route::Direct;
    const auto& state = sessions_.at(*s);
    if (!state.buffer.empty() || !old_link_reported_up) return Route::Buffer;
    return Route::OldPath;
  }

  void buffer_packet(SessionId session, Packet p) {
    auto it = sessions_.find(session);
    if (it == sessions_.end()) throw IllegalState("buffer_packet: session not buffering");
    p.path = PacketPath::Buffered;
    p.status = PacketStatus::InFlight;
    it->second.buffer.push_back(p);
  }

  const std::deque<Packet>& buffer(SessionId session) const {
    auto it = sessions_.find(session);
    if (it == sessions_.end()) throw IllegalState("buffer: session not buffering");
    return it->second.buffer;
  }

  // Binding update/ack: records the new address, stops buffering and hands
  // the buffered packets back in FIFO order for flushing.
  std::vector<Packet> binding_update(MuId mu, const CareOfAddress& coa, const CoaPool& pool) {
    auto s = buffering_session(mu);
    if (!s) throw IllegalState("binding_update: no buffering session for mu " + std::to_string(mu));
    if (!pool.is_live(coa)) throw IllegalState("binding_update: stale care-of address " + coa.value);
    bindings_[mu] = coa.value;
    return take(*s);
  }

  // Ends buffering without a binding (execution aborted).
  std::vector<Packet> abort(SessionId session) { return take(session); }

  void bind(MuId mu, std::string coa) { bindings_[mu] = std::move(coa); }

  std::optional<std::string> binding(MuId mu) const {
    auto it = bindings_.find(mu);
    if (it == bindings_.end()) return std::nullopt;
    return it->second;
  }

 private:
  struct SessionBuffer {
    MuId mu = 0;
    std::deque<Packet> buffer;
  };

  std::vector<Packet> take(SessionId session) {
    auto it = sessions_.find(session);
    if (it == sessions_.end()) throw IllegalState("session not buffering");
    std::vector<Packet> out(it->second.buffer.begin(), it->second.buffer.end());
    by_mu_.erase(it->second.mu);
    sessions_.erase(it);
    return out;
  }

  std::map<SessionId, SessionBuffer> sessions_;
  std::map<MuId, SessionId> by_mu_;
  std::map<MuId, std::string> bindings_;
};

inline void begin_buffering(HomeAgent& ha, const HandoverSession& session) {
  if (session.state != SessionState::Accepted && session.state != SessionState::Executing) {
    throw IllegalState("begin_buffering: session " + std::to_string(session.id) +
                       " is not Accepted");
  }
  ha.begin_buffering(session.id, session.mu_id);
}

inline std::vector<Packet> binding_update(HomeAgent& ha, MuId mu, const CareOfAddress& coa,
                                          const CoaPool& pool) {
  return ha.binding_update(mu, coa, pool);
}

//-----------------------------------------------------------------------------
// Execution schedule
//-----------------------------------------------------------------------------

struct ExecutionPlan {
  SimTime buffering_start = 0;
  SimTime auth_done = 0;
  SimTime coa_ready = 0;
  SimTime binding_ack = 0;
};

inline ExecutionPlan plan_execution(SimTime start, const ExecutionTimings& t) {
  ExecutionPlan p;
  p.buffering_start = start;
  p.auth_done = start + t.auth_delay;
  p.coa_ready = p.auth_done + t.dhcp_delay;
  p.binding_ack = p.coa_ready + t.binding_rtt;
  return p;
}

// Buffered packet i leaves at ack + i/flush_rate; the flush is done once the
// last one has been served, i.e. at ack + n/flush_rate.
struct FlushPlan {
  std::vector<SimTime> delivery_times;
  SimTime drain_complete = 0;
  SimTime release_at = 0;
};

inline FlushPlan plan_flush(std::size_t n_packets, SimTime binding_ack, const ExecutionTimings& t) {
  FlushPlan plan;
  plan.delivery_times.reserve(n_packets);
  for (std::size_t i = 0; i < n_packets; ++i) {
    plan.delivery_times.push_back(binding_ack + service_offset(i, t.flush_rate));
  }
  plan.drain_complete = binding_ack + service_offset(n_packets, t.flush_rate);
  plan.release_at = plan.drain_complete + t.release_delay;
  return plan;
}

// Source-side cleanup once the buffer is drained: give back the old
// reservation and the old care-of address.
inline void release_source(RatDescriptor* source, CoaPool* source_pool,
                           const std::optional<CareOfAddress>& old_coa, Bandwidth demand) {
  if (source) {
    if (source->load < demand) {
      throw IllegalState("release_source: rat " + std::to_string(source->id) +
                         " load below session demand");
    }
    source->load -= demand;
  }
  if (source_pool && old_coa) source_pool->release(*old_coa);
}

struct ReleaseRecord {
  SimTime drain_complete = 0;
  SimTime released_at = 0;
  MihEvent complete_event;
};

inline ReleaseRecord flush_and_release(HandoverSession& session, std::vector<Packet>& flushed,
                                       SimTime binding_ack, const ExecutionTimings& timings,
                                       RatId target, RatDescriptor* source, CoaPool* source_pool,
                                       const std::optional<CareOfAddress>& old_coa) {
  const FlushPlan plan = plan_flush(flushed.size(), binding_ack, timings);
  for (std::size_t i = 0; i < flushed.size(); ++i) {
    flushed[i].delivered_at = plan.delivery_times[i];
    flushed[i].status = PacketStatus::Delivered;
  }
  release_source(source, source_pool, old_coa, session.demand);
  if (session.state == SessionState::Accepted) session.transition(SessionState::Executing);
  session.transition(SessionState::Complete);
  session.completion_time = plan.release_at;

  ReleaseRecord rec;
  rec.drain_complete = plan.drain_complete;
  rec.released_at = plan.release_at;
  rec.complete_event = {MihEventKind::LinkHandoverComplete, target, session.mu_id,
                        plan.release_at, std::nullopt};
  return rec;
}

//-----------------------------------------------------------------------------
// Whole procedure, without traffic
//-----------------------------------------------------------------------------

struct HandoverContext {
  MobileUser& mu;
  RatDescriptor& target;
  CoaPool& target_pool;
  RatDescriptor* source = nullptr;
  CoaPool* source_pool = nullptr;
  std::optional<CareOfAddress> old_coa;
};

struct CompletionRecord {
  bool completed = false;
  ExecutionPlan plan;
  std::optional<CareOfAddress> coa;
  SimTime drain_complete = 0;
  SimTime released_at = 0;
  std::vector<Packet> flushed;
  std::vector<MihEvent> events;
};

// Runs buffering, authentication, DHCP, binding, flush and release back to
// back starting at `clock`. Packets already buffered at binding time are
// flushed. An exhausted DHCP pool aborts the session and rolls back the
// target reservation.
inline CompletionRecord execute_handover(HandoverSession& session, const ExecutionTimings& timings,
                                         HomeAgent& ha, HandoverContext ctx, SimTime clock) {
  if (session.state != SessionState::Accepted) {
    throw IllegalState("execute_handover: session " + std::to_string(session.id) +
                       " is not Accepted");
  }
  CompletionRecord rec;
  rec.plan = plan_execution(clock, timings);
  session.decision_time = session.decision_time.value_or(clock);

  begin_buffering(ha, session);
  session.transition(SessionState::Executing);
  rec.events.push_back({MihEventKind::LinkHandoverImminent, ctx.target.id, session.mu_id,
                        clock, std::nullopt});

  CareOfAddress coa;
  try {
    coa = allocate_coa(ctx.target_pool, session.id, rec.plan.auth_done);
  } catch (const NoAddressAvailable&) {
    ha.abort(session.id);
    ctx.target.load -= session.demand;
    session.transition(SessionState::Rejected);
    session.completion_time = rec.plan.auth_done;
    throw;
  }
  coa.allocated_at = rec.plan.coa_ready;
  rec.coa = coa;

  rec.flushed = binding_update(ha, session.mu_id, coa, ctx.target_pool);
  ctx.mu.attachment = Attachment{ctx.target.id, coa.value};

  ReleaseRecord rel = flush_and_release(session, rec.flushed, rec.plan.binding_ack, timings,
                                        ctx.target.id, ctx.source, ctx.source_pool, ctx.old_coa);
  rec.drain_complete = rel.drain_complete;
  rec.released_at = rel.released_at;
  rec.events.push_back(rel.complete_event);
  rec.completed = true;
  return rec;
}

}  // namespace iam4vho
