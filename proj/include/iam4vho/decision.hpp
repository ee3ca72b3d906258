#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "iam4vho/core.hpp"
#include "iam4vho/mih.hpp"
#include "iam4vho/radio_env.hpp"

namespace iam4vho {

enum class SessionClass { AIVHO, AAVHO, MAVHO };

inline std::string_view to_string(SessionClass c) {
  switch (c) {
    case SessionClass::AIVHO: return "AIVHO";
    case SessionClass::AAVHO: return "AAVHO";
    case SessionClass::MAVHO: return "MAVHO";
  }
  return "?";
}

inline bool is_imperative(SessionClass c) { return c == SessionClass::AIVHO; }

// 0 for imperative, 1 for both alternative classes.
inline int priority_rank(SessionClass c) { return is_imperative(c) ? 0 : 1; }

enum class SessionState {
  Queued,
  AdmissionCheck,
  PolicyCheck,
  Accepted,
  Rejected,
  Executing,
  Complete,
};

inline std::string_view to_string(SessionState s) {
  switch (s) {
    case SessionState::Queued: return "Queued";
    case SessionState::AdmissionCheck: return "AdmissionCheck";
    case SessionState::PolicyCheck: return "PolicyCheck";
    case SessionState::Accepted: return "Accepted";
    case SessionState::Rejected: return "Rejected";
    case SessionState::Executing: return "Executing";
    case SessionState::Complete: return "Complete";
  }
  return "?";
}

// Queued -> AdmissionCheck <-> PolicyCheck -> Accepted -> Executing -> Complete,
// rejection from either check, and Executing -> Rejected when execution aborts
// (care-of address pool exhausted).
inline bool can_transition(SessionState from, SessionState to) {
  using S = SessionState;
  switch (from) {
    case S::Queued: return to == S::AdmissionCheck;
    case S::AdmissionCheck: return to == S::PolicyCheck || to == S::Rejected;
    case S::PolicyCheck:
      return to == S::AdmissionCheck || to == S::Accepted || to == S::Rejected;
    case S::Accepted: return to == S::Executing;
    case S::Executing: return to == S::Complete || to == S::Rejected;
    case S::Rejected:
    case S::Complete: return false;
  }
  return false;
}

enum class RejectReason { NoResources, EmptyCandidateSet, OutOfCoverage, NoAddressAvailable };

inline std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::NoResources: return "NoResources";
    case RejectReason::EmptyCandidateSet: return "EmptyCandidateSet";
    case RejectReason::OutOfCoverage: return "OutOfCoverage";
    case RejectReason::NoAddressAvailable: return "NoAddressAvailable";
  }
  return "?";
}

struct HandoverSession {
  SessionId id = 0;
  MuId mu_id = 0;
  SessionClass session_class = SessionClass::AIVHO;
  SimTime arrival_time = 0;
  std::vector<RatId> priority_list;
  std::size_t cursor = 0;
  Bandwidth demand = 1;
  SessionState state = SessionState::Queued;
  std::optional<RatId> manual_choice;
  std::optional<SimTime> decision_time;
  std::optional<SimTime> completion_time;

  void transition(SessionState to) {
    if (!can_transition(state, to)) {
      throw IllegalState("session " + std::to_string(id) + ": illegal transition " +
                         std::string(to_string(state)) + " -> " + std::string(to_string(to)));
    }
    state = to;
  }
};

//-----------------------------------------------------------------------------
// Triggers
//-----------------------------------------------------------------------------

struct LinkTrigger {
  MihEvent event;
};
struct PreferenceChange {
  MuId mu = 0;
  PreferenceWeights preferences;
};
struct ManualSelection {
  MuId mu = 0;
  RatId rat = 0;
};

using Trigger = std::variant<LinkTrigger, PreferenceChange, ManualSelection>;

// Signal loss on the serving link is imperative; LinkDown is accepted as well
// for links that drop without passing through the going-down band.
inline SessionClass classify_trigger(const Trigger& trigger) {
  if (const auto* link = std::get_if<LinkTrigger>(&trigger)) {
    if (link->event.kind != MihEventKind::LinkGoingDown &&
        link->event.kind != MihEventKind::LinkDown) {
      throw std::invalid_argument("classify_trigger: link event is not a handover trigger");
    }
    return SessionClass::AIVHO;
  }
  if (std::holds_alternative<PreferenceChange>(trigger)) return SessionClass::AAVHO;
  return SessionClass::MAVHO;
}

//-----------------------------------------------------------------------------
// Priority lists
//-----------------------------------------------------------------------------

using RssMap = std::map<RatId, double>;

inline double preference_score(const RatInfoRecord& r, const PreferenceWeights& prefs,
                               double max_rate, double max_cost) {
  const double rate_term = max_rate > 0.0 ? r.data_rate / max_rate : 0.0;
  const double cost_term = max_cost > 0.0 ? r.cost / max_cost : 0.0;
  return prefs.weight_rate * rate_term - prefs.weight_cost * cost_term;
}

// AIVHO: strongest RSS first. AAVHO: weighted rate/cost score, normalised by
// the candidate maxima. MAVHO: the user's pick alone. Ties go to the lower id.
inline std::vector<RatId> build_priority_list(SessionClass cls,
                                              std::span<const RatInfoRecord> candidates,
                                              const RssMap& rss, const PreferenceWeights& prefs,
                                              std::optional<RatId> manual_choice = std::nullopt) {
  if (cls == SessionClass::MAVHO) {
    if (!manual_choice) throw std::invalid_argument("build_priority_list: MAVHO without choice");
    return {*manual_choice};
  }
  if (candidates.empty()) throw EmptyCandidateSet();

  std::vector<std::pair<double, RatId>> keyed;
  keyed.reserve(candidates.size());
  if (cls == SessionClass::AIVHO) {
    for (const auto& c : candidates) {
      auto it = rss.find(c.rat_id);
      if (it == rss.end()) {
        throw std::invalid_argument("build_priority_list: no RSS for rat " +
                                    std::to_string(c.rat_id));
      }
      keyed.emplace_back(it->second, c.rat_id);
    }
  } else {
    double max_rate = 0.0, max_cost = 0.0;
    for (const auto& c : candidates) {
      max_rate = std::max(max_rate, c.data_rate);
      max_cost = std::max(max_cost, c.cost);
    }
    for (const auto& c : candidates) {
      keyed.emplace_back(preference_score(c, prefs, max_rate, max_cost), c.rat_id);
    }
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  std::vector<RatId> out;
  out.reserve(keyed.size());
  for (const auto& [score, id] : keyed) out.push_back(id);
  return out;
}

//-----------------------------------------------------------------------------
// Session queue
//-----------------------------------------------------------------------------

// Imperative sessions ahead of alternative ones; FIFO by arrival inside a
// class, ties broken by session id.
class SessionQueue {
 public:
  void enqueue(const HandoverSession& s) {
    if (s.state != SessionState::Queued) {
      throw IllegalState("enqueue: session " + std::to_string(s.id) + " is not Queued");
    }
    pending_.insert({priority_rank(s.session_class), s.arrival_time, s.id});
  }

  std::optional<SessionId> next_session() {
    if (pending_.empty()) return std::nullopt;
    auto head = pending_.begin();
    SessionId id = std::get<2>(*head);
    pending_.erase(head);
    return id;
  }

  std::optional<SessionId> peek() const {
    if (pending_.empty()) return std::nullopt;
    return std::get<2>(*pending_.begin());
  }

  bool has_imperative() const { return !pending_.empty() && std::get<0>(*pending_.begin()) == 0; }
  std::size_t size() const { return pending_.size(); }
  bool empty() const { return pending_.empty(); }

  std::vector<SessionId> pending() const {
    std::vector<SessionId> out;
    for (const auto& k : pending_) out.push_back(std::get<2>(k));
    return out;
  }

 private:
  std::set<std::tuple<int, SimTime, SessionId>> pending_;
};

//-----------------------------------------------------------------------------
// Admission control and policy
//-----------------------------------------------------------------------------

// Sufficiency of resources; on success the demand is reserved.
inline bool admission_check(RatDescriptor& rat, Bandwidth demand) {
  if (demand <= 0) throw std::invalid_argument("admission_check: demand must be positive");
  if (rat.load + demand > rat.capacity) return false;
  rat.load += demand;
  return true;
}

inline bool policy_allows(const PolicyRule& rule, const OperatorId& home_operator, Bandwidth demand) {
  if (demand < rule.min_demand) return false;
  if (rule.open()) return true;
  if (rule.allowed_operator_ids.contains(home_operator)) return true;
  auto it = rule.roaming_allowed.find(home_operator);
  return it != rule.roaming_allowed.end() && it->second;
}

// Runs after admission_check reserved `demand` on `rat`; a failure hands the
// reservation back.
inline bool policy_check(RatDescriptor& rat, const MobileUser& mu, Bandwidth demand) {
  if (policy_allows(rat.policy, mu.home_operator, demand)) return true;
  rat.load -= demand;
  return false;
}

struct Decision {
  bool accepted = false;
  std::optional<RatId> target;
  std::optional<RejectReason> reason;

  static Decision accept(RatId r) { return {true, r, std::nullopt}; }
  static Decision reject(RejectReason why) { return {false, std::nullopt, why}; }
  friend bool operator==(const Decision&, const Decision&) = default;
};

struct NoopDecisionObserver {
  void operator()(const HandoverSession&, SessionState /*from*/, std::optional<RatId>) const {}
};

// Walks the priority list from the cursor: an admission denial or a policy
// failure moves on to the next RAT; the first RAT passing both wins. The
// observer sees every state transition with the RAT under examination.
template <typename Observer = NoopDecisionObserver>
Decision decide(HandoverSession& s, std::span<RatDescriptor> world, const MobileUser& mu,
                Observer&& observe = {}) {
  if (s.state != SessionState::AdmissionCheck) {
    throw IllegalState("decide: session " + std::to_string(s.id) + " not in AdmissionCheck");
  }
  auto move = [&](SessionState to, std::optional<RatId> rat) {
    const SessionState from = s.state;
    s.transition(to);
    observe(s, from, rat);
  };
  auto find = [&](RatId id) -> RatDescriptor* {
    for (auto& r : world) {
      if (r.id == id) return &r;
    }
    return nullptr;
  };

  while (s.cursor < s.priority_list.size()) {
    const RatId id = s.priority_list[s.cursor];
    RatDescriptor* rat = find(id);
    if (rat && admission_check(*rat, s.demand)) {
      move(SessionState::PolicyCheck, id);
      if (policy_check(*rat, mu, s.demand)) {
        move(SessionState::Accepted, id);
        return Decision::accept(id);
      }
      move(SessionState::AdmissionCheck, id);
    }
    // A manual pick never falls back.
    if (s.session_class == SessionClass::MAVHO) {
      s.cursor = s.priority_list.size();
      break;
    }
    ++s.cursor;
  }
  move(SessionState::Rejected, std::nullopt);
  return Decision::reject(RejectReason::NoResources);
}

}  // namespace iam4vho
