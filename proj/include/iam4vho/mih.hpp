#pragma once

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iam4vho/core.hpp"
#include "iam4vho/radio_env.hpp"

namespace iam4vho {

//-----------------------------------------------------------------------------
// Event service
//-----------------------------------------------------------------------------

enum class MihEventKind {
  LinkGoingDown,
  LinkDown,
  LinkUp,
  LinkHandoverImminent,
  LinkHandoverComplete,
};

inline std::string_view to_string(MihEventKind k) {
  switch (k) {
    case MihEventKind::LinkGoingDown: return "LinkGoingDown";
    case MihEventKind::LinkDown: return "LinkDown";
    case MihEventKind::LinkUp: return "LinkUp";
    case MihEventKind::LinkHandoverImminent: return "LinkHandoverImminent";
    case MihEventKind::LinkHandoverComplete: return "LinkHandoverComplete";
  }
  return "?";
}

struct MihEvent {
  MihEventKind kind = MihEventKind::LinkUp;
  RatId rat_id = 0;
  MuId mu_id = 0;
  SimTime time = 0;
  std::optional<double> rss;  // reading that caused the event, if any

  friend bool operator==(const MihEvent&, const MihEvent&) = default;
};

struct LinkThresholds {
  double t_down = -95.0;
  double t_going_down = -85.0;
  double t_up = -80.0;
  double hysteresis = 2.0;

  bool valid() const {
    return t_down < t_going_down && t_going_down <= t_up && hysteresis >= 0.0;
  }
};

// Stateless crossing detector between two consecutive readings of one link.
// An absent reading is treated as -inf for downward crossings; a reading after
// an absent one counts as first coverage.
inline std::vector<MihEvent> detect_link_events(const std::optional<RssReading>& prev,
                                                const std::optional<RssReading>& curr,
                                                const LinkThresholds& th, MuId mu, SimTime now) {
  std::vector<MihEvent> out;
  if (!prev && !curr) return out;

  constexpr double kNone = -std::numeric_limits<double>::infinity();
  const RatId rat = curr ? curr->rat_id : prev->rat_id;
  const double p = prev ? prev->value : kNone;
  const double c = curr ? curr->value : kNone;
  const std::optional<double> reading = curr ? std::optional<double>(c) : std::nullopt;

  auto emit = [&](MihEventKind k) { out.push_back({k, rat, mu, now, reading}); };

  if (prev && p >= th.t_going_down && c < th.t_going_down) emit(MihEventKind::LinkGoingDown);
  if (prev && p >= th.t_down && c < th.t_down) emit(MihEventKind::LinkDown);

  const double up_level = th.t_up + th.hysteresis;
  if (curr && (!prev || (p < up_level && c >= up_level))) emit(MihEventKind::LinkUp);
  return out;
}

// Per-(mu, rat) link state on top of detect_link_events. Suppresses events
// that would break Down/Up alternation and re-arms LinkGoingDown only after
// the signal recovers past t_going_down + hysteresis.
class LinkMonitor {
 public:
  LinkMonitor() = default;
  LinkMonitor(MuId mu, RatId rat, LinkThresholds th) : mu_(mu), rat_(rat), th_(th) {}

  std::vector<MihEvent> observe(std::optional<double> rss, SimTime now) {
    std::optional<RssReading> curr;
    if (rss) curr = RssReading{rat_, *rss, now};

    std::vector<MihEvent> out;
    for (const MihEvent& ev : detect_link_events(prev_, curr, th_, mu_, now)) {
      switch (ev.kind) {
        case MihEventKind::LinkGoingDown:
          if (up_ && !going_down_reported_) {
            going_down_reported_ = true;
            out.push_back(ev);
          }
          break;
        case MihEventKind::LinkDown:
          if (up_) {
            up_ = false;
            out.push_back(ev);
          }
          break;
        case MihEventKind::LinkUp:
          // First coverage below t_down is not a usable link yet.
          if (!up_ && *ev.rss >= th_.t_down) {
            up_ = true;
            going_down_reported_ = *ev.rss < th_.t_going_down;
            out.push_back(ev);
          }
          break;
        default:
          break;
      }
    }
    if (up_ && going_down_reported_ && rss && *rss >= th_.t_going_down + th_.hysteresis) {
      going_down_reported_ = false;
    }
    prev_ = curr;
    return out;
  }

  bool up() const { return up_; }
  const std::optional<RssReading>& last() const { return prev_; }
  const LinkThresholds& thresholds() const { return th_; }

 private:
  MuId mu_ = 0;
  RatId rat_ = 0;
  LinkThresholds th_;
  std::optional<RssReading> prev_;
  bool up_ = false;
  bool going_down_reported_ = false;
};

//-----------------------------------------------------------------------------
// Information service
//-----------------------------------------------------------------------------

struct RatInfoRecord {
  RatId rat_id = 0;
  RatKind kind = RatKind::WiFi;
  Vec2 location;
  double cost = 0.0;
  double data_rate = 0.0;
  OperatorId operator_id;
  std::set<std::string> capabilities;

  friend bool operator==(const RatInfoRecord&, const RatInfoRecord&) = default;
};

inline RatInfoRecord to_info_record(const RatDescriptor& r) {
  return {r.id, r.kind, r.poa_position, r.cost, r.data_rate, r.operator_id, r.capabilities};
}

// MIIS lives with the home agent and answers from live world state.
inline std::vector<RatInfoRecord> miis_query(const MobileUser& mu,
                                             std::span<const RatDescriptor> world) {
  std::vector<RatInfoRecord> out;
  for (const auto& r : visible_rats(mu.position, world)) out.push_back(to_info_record(r));
  return out;
}

//-----------------------------------------------------------------------------
// Command service
//-----------------------------------------------------------------------------

enum class MihCommandKind { HandoverInitiate, HandoverPrepare, HandoverCommit, HandoverComplete };

inline std::string_view to_string(MihCommandKind k) {
  switch (k) {
    case MihCommandKind::HandoverInitiate: return "HandoverInitiate";
    case MihCommandKind::HandoverPrepare: return "HandoverPrepare";
    case MihCommandKind::HandoverCommit: return "HandoverCommit";
    case MihCommandKind::HandoverComplete: return "HandoverComplete";
  }
  return "?";
}

struct MihCommand {
  MihCommandKind kind = MihCommandKind::HandoverInitiate;
  SessionId session_id = 0;
  std::optional<RatId> target;
  SimTime time = 0;

  friend bool operator==(const MihCommand&, const MihCommand&) = default;
};

struct CommandAck {
  SessionId session_id = 0;
  std::size_t index = 0;  // position of the command in the session's log
};

// Command log per session. Only records; state changes belong to the
// decision and execution code.
class SessionCommandTable {
 public:
  void open(SessionId id) { logs_.try_emplace(id); }
  bool contains(SessionId id) const { return logs_.contains(id); }

  const std::vector<MihCommand>& log(SessionId id) const {
    auto it = logs_.find(id);
    if (it == logs_.end()) throw UnknownSession(id);
    return it->second;
  }

 private:
  friend CommandAck mics_dispatch(const MihCommand& cmd, SessionCommandTable& table);
  std::map<SessionId, std::vector<MihCommand>> logs_;
};

inline CommandAck mics_dispatch(const MihCommand& cmd, SessionCommandTable& table) {
  auto it = table.logs_.find(cmd.session_id);
  if (it == table.logs_.end()) throw UnknownSession(cmd.session_id);
  it->second.push_back(cmd);
  return {cmd.session_id, it->second.size() - 1};
}

}  // namespace iam4vho
