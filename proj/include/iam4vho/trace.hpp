#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "iam4vho/core.hpp"
#include "iam4vho/decision.hpp"
#include "iam4vho/execution.hpp"
#include "iam4vho/mih.hpp"

namespace iam4vho {

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

// Seconds with microsecond digits, exact for any SimTime.
inline std::string format_time(SimTime t) {
  const bool neg = t < 0;
  const std::uint64_t a = neg ? static_cast<std::uint64_t>(-t) : static_cast<std::uint64_t>(t);
  std::string frac = std::to_string(a % kMicrosPerSecond);
  frac.insert(0, 6 - frac.size(), '0');
  return (neg ? "-" : "") + std::to_string(a / kMicrosPerSecond) + "." + frac;
}

//-----------------------------------------------------------------------------
// Records
//-----------------------------------------------------------------------------

struct DispatchRecord {
  std::uint64_t seq = 0;
  std::string event;
  std::string detail;
};

struct TrafficRecord {
  MuId mu = 0;
  double rate_pps = 0.0;
  SimTime start = 0;
  SimTime stop = 0;
};

struct PacketRecord {
  Packet packet;
};

struct MihEventRecord {
  MihEvent event;
};

struct CommandRecord {
  MihCommand command;
};

struct SessionCreatedRecord {
  SessionId session = 0;
  MuId mu = 0;
  SessionClass session_class = SessionClass::AIVHO;
  std::vector<RatId> priority_list;
};

struct TransitionRecord {
  SessionId session = 0;
  MuId mu = 0;
  SessionClass session_class = SessionClass::AIVHO;
  SessionState from = SessionState::Queued;
  SessionState to = SessionState::Queued;
  std::optional<RatId> rat;
  std::optional<RejectReason> reason;
};

struct DequeueRecord {
  SessionId session = 0;
  SessionClass session_class = SessionClass::AIVHO;
  SimTime arrival = 0;
};

struct ExecStepRecord {
  SessionId session = 0;
  MuId mu = 0;
  std::string step;
  std::string detail;
};

struct SnapshotRecord {
  std::vector<std::pair<RatId, Bandwidth>> loads;
};

struct NoteRecord {
  std::string text;
};

using TraceBody = std::variant<DispatchRecord, TrafficRecord, PacketRecord, MihEventRecord,
                               CommandRecord, SessionCreatedRecord, TransitionRecord,
                               DequeueRecord, ExecStepRecord, SnapshotRecord, NoteRecord>;

struct TraceRecord {
  SimTime time = 0;
  TraceBody body;
};

//-----------------------------------------------------------------------------
// Line format: "<time_s> <kind> key=value ..."
//-----------------------------------------------------------------------------

namespace detail {

struct LineWriter {
  std::ostringstream out;

  void field(std::string_view key, std::string_view value) { out << ' ' << key << '=' << value; }
  void field(std::string_view key, std::int64_t value) { out << ' ' << key << '=' << value; }
  void field(std::string_view key, std::uint64_t value) { out << ' ' << key << '=' << value; }

  void operator()(const DispatchRecord& r) {
    out << "dispatch";
    field("seq", r.seq);
    field("event", r.event);
    if (!r.detail.empty()) field("detail", r.detail);
  }
  void operator()(const TrafficRecord& r) {
    out << "traffic";
    field("mu", r.mu);
    field("rate_pps", format_double(r.rate_pps));
    field("start", format_time(r.start));
    field("stop", format_time(r.stop));
  }
  void operator()(const PacketRecord& r) {
    const Packet& p = r.packet;
    out << "packet";
    field("mu", p.mu);
    field("seq_no", p.seq_no);
    field("created", format_time(p.created_at));
    field("status", to_string(p.status));
    field("path", to_string(p.path));
    if (p.delivered_at) field("delivered", format_time(*p.delivered_at));
  }
  void operator()(const MihEventRecord& r) {
    out << "mih_event";
    field("kind", to_string(r.event.kind));
    field("mu", r.event.mu_id);
    field("rat", r.event.rat_id);
    if (r.event.rss) field("rss_dbm", format_double(*r.event.rss));
  }
  void operator()(const CommandRecord& r) {
    out << "mih_command";
    field("kind", to_string(r.command.kind));
    field("session", r.command.session_id);
    if (r.command.target) field("target", *r.command.target);
  }
  void operator()(const SessionCreatedRecord& r) {
    out << "session";
    field("session", r.session);
    field("mu", r.mu);
    field("class", to_string(r.session_class));
    std::string list;
    for (std::size_t i = 0; i < r.priority_list.size(); ++i) {
      if (i) list += ',';
      list += std::to_string(r.priority_list[i]);
    }
    field("priority_list", "[" + list + "]");
  }
  void operator()(const TransitionRecord& r) {
    out << "transition";
    field("session", r.session);
    field("mu", r.mu);
    field("class", to_string(r.session_class));
    field("from", to_string(r.from));
    field("to", to_string(r.to));
    if (r.rat) field("rat", *r.rat);
    if (r.reason) field("reason", to_string(*r.reason));
  }
  void operator()(const DequeueRecord& r) {
    out << "dequeue";
    field("session", r.session);
    field("class", to_string(r.session_class));
    field("arrival", format_time(r.arrival));
  }
  void operator()(const ExecStepRecord& r) {
    out << "exec";
    field("session", r.session);
    field("mu", r.mu);
    field("step", r.step);
    if (!r.detail.empty()) field("detail", r.detail);
  }
  void operator()(const SnapshotRecord& r) {
    out << "snapshot";
    for (const auto& [rat, load] : r.loads) field("load_" + std::to_string(rat), load);
  }
  void operator()(const NoteRecord& r) {
    out << "note";
    field("text", r.text);
  }
};

}  // namespace detail

inline std::string format_record(const TraceRecord& rec) {
  detail::LineWriter w;
  w.out << format_time(rec.time) << ' ';
  std::visit(w, rec.body);
  return w.out.str();
}

struct EventTrace {
  std::vector<TraceRecord> records;
  SimTime end_time = 0;

  void add(SimTime t, TraceBody body) { records.push_back({t, std::move(body)}); }

  void write(std::ostream& os) const {
    for (const auto& r : records) os << format_record(r) << '\n';
  }

  std::string to_string() const {
    std::ostringstream os;
    write(os);
    return os.str();
  }
};

}  // namespace iam4vho
