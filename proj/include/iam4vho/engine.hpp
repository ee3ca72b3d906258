#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iam4vho/core.hpp"
#include "iam4vho/decision.hpp"
#include "iam4vho/execution.hpp"
#include "iam4vho/metrics.hpp"
#include "iam4vho/mih.hpp"
#include "iam4vho/radio_env.hpp"
#include "iam4vho/scenario.hpp"
#include "iam4vho/scheduler.hpp"
#include "iam4vho/trace.hpp"

namespace iam4vho {

enum class Mode { Iam4vho, Baseline };

inline std::string_view to_string(Mode m) { return m == Mode::Iam4vho ? "iam4vho" : "baseline"; }

inline std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "iam4vho") return Mode::Iam4vho;
  if (s == "baseline") return Mode::Baseline;
  return std::nullopt;
}

//-----------------------------------------------------------------------------
// Events
//-----------------------------------------------------------------------------

struct MobilityStep {};
struct PacketArrival {
  MuId mu = 0;
  std::int64_t seq_no = 0;
  SimTime time = 0;
};
struct LinkEventScan {};
struct SessionArrival {
  Trigger trigger;
};
enum class ExecStepKind { DecisionComplete, AuthComplete, CoaReady, BindingAck, FlushDelivery, Release };
struct ExecStep {
  SessionId session = 0;
  ExecStepKind step = ExecStepKind::DecisionComplete;
  MuId mu = 0;
  std::int64_t seq_no = 0;  // FlushDelivery only
};
struct MetricSnapshot {};

using EventPayload =
    std::variant<MobilityStep, PacketArrival, LinkEventScan, SessionArrival, ExecStep, MetricSnapshot>;

inline std::string_view event_name(const EventPayload& p) {
  static constexpr std::string_view names[] = {"MobilityStep", "PacketArrival", "LinkEventScan",
                                               "SessionArrival", "ExecStep", "MetricSnapshot"};
  return names[p.index()];
}

inline std::string_view to_string(ExecStepKind k) {
  switch (k) {
    case ExecStepKind::DecisionComplete: return "decision_complete";
    case ExecStepKind::AuthComplete: return "auth_complete";
    case ExecStepKind::CoaReady: return "coa_ready";
    case ExecStepKind::BindingAck: return "binding_ack";
    case ExecStepKind::FlushDelivery: return "flush_delivery";
    case ExecStepKind::Release: return "release";
  }
  return "?";
}

// Constant-bit-rate CN stream: arrivals at t0 + k/rate strictly below t1,
// with consecutive per-MU sequence numbers starting at 0.
inline std::vector<PacketArrival> generate_traffic(MuId mu, double rate, SimTime t0, SimTime t1) {
  if (!(rate > 0.0)) throw std::invalid_argument("generate_traffic: rate must be positive");
  std::vector<PacketArrival> out;
  for (std::int64_t k = 0;; ++k) {
    const SimTime t = t0 + service_offset(static_cast<std::size_t>(k), rate);
    if (t >= t1) break;
    out.push_back({mu, k, t});
  }
  return out;
}

//-----------------------------------------------------------------------------
// Simulation
//-----------------------------------------------------------------------------

struct RunResult {
  EventTrace trace;
  MetricsReport metrics;
  std::vector<HandoverSession> sessions;
  std::vector<RatDescriptor> final_rats;
  std::vector<MobileUser> final_mus;
  std::map<SessionId, SimTime> release_times;
};

class Simulation {
 public:
  Simulation(const Scenario& scenario, Mode mode, std::uint64_t seed,
             std::optional<std::size_t> priority_list_limit = std::nullopt)
      : sc_(scenario), mode_(mode), seed_(seed),
        limit_(priority_list_limit.value_or(scenario.priority_list_limit)) {
    validate_scenario(scenario);
  }

  RunResult run() {
    init();
    sched_.run_until(sc_.duration, [this](const ScheduledEvent<EventPayload>& ev) {
      trace_.add(ev.time, DispatchRecord{ev.seq, std::string(event_name(ev.payload)), detail_of(ev.payload)});
      std::visit([&](const auto& p) { handle(p, ev.time); }, ev.payload);
    });
    finish();

    RunResult r;
    r.trace = std::move(trace_);
    r.metrics = collect_metrics(r.trace);
    for (auto& [id, s] : sessions_) r.sessions.push_back(s);
    r.final_rats = rats_;
    for (auto& [id, m] : mus_) r.final_mus.push_back(m.user);
    r.release_times = release_times_;
    return r;
  }

 private:
  struct MuState {
    MobileUser user;
    Rng mobility_rng;
    Rng noise_rng;
    std::map<RatId, LinkMonitor> monitors;
    std::optional<CareOfAddress> coa;
    std::optional<SessionId> active_session;
    bool trigger_pending = false;
    bool in_break = false;     // baseline: detached between execution start and binding ack
    bool via_binding = false;  // current attachment came from a completed binding
    SimTime flush_free = 0;    // next free slot on the HA flush channel
    std::vector<Packet> packets;
  };

  struct ExecState {
    RatId target = 0;
    std::optional<RatId> source;
    std::optional<CareOfAddress> old_coa;
    std::optional<CareOfAddress> new_coa;
    ExecutionPlan plan;
  };

  //---------------------------------------------------------------------------
  // Setup / teardown
  //---------------------------------------------------------------------------

  void init() {
    rats_ = sc_.rats;
    std::sort(rats_.begin(), rats_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (const auto& r : rats_) pools_[r.id] = CoaPool(r.id, r.coa_pool_size);

    std::uint64_t stream = 0;
    std::vector<const MuSpec*> specs;
    for (const auto& m : sc_.mus) specs.push_back(&m);
    std::sort(specs.begin(), specs.end(),
              [](const MuSpec* a, const MuSpec* b) { return a->user.id < b->user.id; });

    for (const MuSpec* spec : specs) {
      MuState st;
      st.user = spec->user;
      st.user.attachment.reset();
      st.mobility_rng = make_stream_rng(seed_, 2 * stream);
      st.noise_rng = make_stream_rng(seed_, 2 * stream + 1);
      ++stream;
      for (const auto& r : rats_) {
        st.monitors.emplace(r.id, LinkMonitor(st.user.id, r.id, sc_.thresholds.at(r.kind)));
      }
      const MuId id = st.user.id;
      mus_.emplace(id, std::move(st));
      MuState& m = mus_.at(id);

      if (spec->initial_rat) attach_initial(m, *spec->initial_rat);

      if (spec->traffic) {
        const SimTime stop = std::min(spec->traffic->stop, sc_.duration);
        trace_.add(0, TrafficRecord{id, spec->traffic->rate_pps, spec->traffic->start, stop});
        for (const auto& a : generate_traffic(id, spec->traffic->rate_pps, spec->traffic->start, stop)) {
          m.packets.push_back(Packet{id, a.seq_no, a.time, std::nullopt, PacketPath::Old,
                                     PacketStatus::InFlight});
          sched_.schedule(a.time, a);
        }
      }
    }

    for (const auto& s : sc_.stimuli) {
      if (s.type == StimulusType::PreferenceChange) {
        sched_.schedule(s.time, SessionArrival{PreferenceChange{s.mu, s.preferences}});
      } else {
        sched_.schedule(s.time, SessionArrival{ManualSelection{s.mu, s.rat}});
      }
    }
    sched_.schedule(0, LinkEventScan{});
    if (sc_.snapshot_period > 0) sched_.schedule(0, MetricSnapshot{});
  }

  void attach_initial(MuState& m, RatId rat_id) {
    RatDescriptor* rat = find_rat(rat_id);
    if (!rat || !admission_check(*rat, m.user.demand)) {
      trace_.add(0, NoteRecord{"initial_attach_refused mu=" + std::to_string(m.user.id)});
      return;
    }
    try {
      m.coa = allocate_coa(pools_.at(rat_id), 0, 0);
    } catch (const NoAddressAvailable&) {
      rat->load -= m.user.demand;
      trace_.add(0, NoteRecord{"initial_attach_no_address mu=" + std::to_string(m.user.id)});
      return;
    }
    m.user.attachment = Attachment{rat_id, m.coa->value};
    ha_.bind(m.user.id, m.coa->value);
  }

  void finish() {
    const SimTime end = sc_.duration;
    trace_.end_time = end;
    for (auto& [id, m] : mus_) {
      for (auto& p : m.packets) {
        if (p.status == PacketStatus::InFlight) trace_.add(end, PacketRecord{p});
      }
    }
  }

  //---------------------------------------------------------------------------
  // Helpers
  //---------------------------------------------------------------------------

  RatDescriptor* find_rat(RatId id) {
    for (auto& r : rats_) {
      if (r.id == id) return &r;
    }
    return nullptr;
  }

  // Physical link state: inside coverage and above the kind's t_down.
  bool link_alive(const MuState& m, RatId rat_id) {
    const RatDescriptor* r = find_rat(rat_id);
    if (!r) return false;
    auto rss = rss_at(*r, m.user.position);
    return rss && *rss >= sc_.thresholds.at(r->kind).t_down;
  }

  void resolve(MuState& m, std::int64_t seq, PacketStatus status, PacketPath path, SimTime now) {
    Packet& p = m.packets.at(static_cast<std::size_t>(seq));
    p.path = path;
    p.status = status;
    if (status == PacketStatus::Delivered) p.delivered_at = now;
    trace_.add(now, PacketRecord{p});
  }

  void deliver_over(MuState& m, std::int64_t seq, RatId rat, PacketPath path, SimTime now) {
    resolve(m, seq, link_alive(m, rat) ? PacketStatus::Delivered : PacketStatus::Dropped, path, now);
  }

  void record_transition(const HandoverSession& s, SessionState from, std::optional<RatId> rat,
                         SimTime now, std::optional<RejectReason> reason = std::nullopt) {
    trace_.add(now, TransitionRecord{s.id, s.mu_id, s.session_class, from, s.state, rat, reason});
  }

  void move(HandoverSession& s, SessionState to, SimTime now, std::optional<RatId> rat = std::nullopt,
            std::optional<RejectReason> reason = std::nullopt) {
    const SessionState from = s.state;
    s.transition(to);
    record_transition(s, from, rat, now, reason);
  }

  void command(MihCommandKind kind, SessionId s, std::optional<RatId> target, SimTime now) {
    MihCommand cmd{kind, s, target, now};
    mics_dispatch(cmd, commands_);
    trace_.add(now, CommandRecord{cmd});
  }

  void mih_event(const MihEvent& ev) { trace_.add(ev.time, MihEventRecord{ev}); }

  void exec_note(const HandoverSession& s, std::string step, std::string detail, SimTime now) {
    trace_.add(now, ExecStepRecord{s.id, s.mu_id, std::move(step), std::move(detail)});
  }

  static std::string detail_of(const EventPayload& p) {
    if (const auto* a = std::get_if<PacketArrival>(&p)) {
      return "mu:" + std::to_string(a->mu) + ",seq:" + std::to_string(a->seq_no);
    }
    if (const auto* e = std::get_if<ExecStep>(&p)) {
      return std::string(to_string(e->step)) + ",session:" + std::to_string(e->session);
    }
    return {};
  }

  //---------------------------------------------------------------------------
  // Handlers
  //---------------------------------------------------------------------------

  void handle(const MobilityStep&, SimTime) {
    const double dt = time_to_seconds(sc_.scan_period);
    for (auto& [id, m] : mus_) m.user = step_mobility(m.user, dt, m.mobility_rng);
  }

  void handle(const LinkEventScan&, SimTime now) {
    for (auto& [id, m] : mus_) {
      for (const auto& r : rats_) {
        auto rss = rss_with_noise(r, m.user.position, sc_.rss_noise_db, m.noise_rng);
        for (const MihEvent& ev : m.monitors.at(r.id).observe(rss, now)) {
          mih_event(ev);
          const bool serving = m.user.attachment && m.user.attachment->rat == r.id;
          const bool trigger =
              ev.kind == MihEventKind::LinkGoingDown || ev.kind == MihEventKind::LinkDown;
          if (serving && trigger && !m.active_session && !m.trigger_pending) {
            m.trigger_pending = true;
            sched_.schedule(now, SessionArrival{LinkTrigger{ev}});
          }
        }
      }
    }
    const SimTime next = now + sc_.scan_period;
    if (next <= sc_.duration) {
      sched_.schedule(next, MobilityStep{});
      sched_.schedule(next, LinkEventScan{});
    }
  }

  void handle(const MetricSnapshot&, SimTime now) {
    SnapshotRecord snap;
    for (const auto& r : rats_) snap.loads.emplace_back(r.id, r.load);
    trace_.add(now, std::move(snap));
    if (now + sc_.snapshot_period <= sc_.duration) sched_.schedule(now + sc_.snapshot_period, MetricSnapshot{});
  }

  void handle(const PacketArrival& a, SimTime now) {
    MuState& m = mus_.at(a.mu);

    // Backlog on the flush channel: queue behind it to keep FIFO delivery.
    if (now < m.flush_free) {
      const SimTime at = m.flush_free;
      m.flush_free += service_offset(1, sc_.timings.flush_rate);
      m.packets.at(static_cast<std::size_t>(a.seq_no)).path = PacketPath::New;
      sched_.schedule(at, ExecStep{m.active_session.value_or(0), ExecStepKind::FlushDelivery, a.mu, a.seq_no});
      return;
    }

    if (auto s = ha_.buffering_session(a.mu)) {
      const ExecState& ex = exec_.at(*s);
      const bool reported_up = ex.source && m.monitors.at(*ex.source).up();
      if (ha_.route(a.mu, reported_up) == HomeAgent::Route::OldPath) {
        deliver_over(m, a.seq_no, *ex.source, PacketPath::Old, now);
      } else {
        ha_.buffer_packet(*s, m.packets.at(static_cast<std::size_t>(a.seq_no)));
        m.packets.at(static_cast<std::size_t>(a.seq_no)).path = PacketPath::Buffered;
      }
      return;
    }

    if (m.in_break || !m.user.attachment) {
      resolve(m, a.seq_no, PacketStatus::Dropped, PacketPath::Old, now);
      return;
    }
    deliver_over(m, a.seq_no, m.user.attachment->rat, m.via_binding ? PacketPath::New : PacketPath::Old, now);
  }

  void handle(const SessionArrival& arrival, SimTime now) {
    const Trigger& trig = arrival.trigger;
    MuId mu_id = 0;
    std::optional<RatId> manual;
    if (const auto* l = std::get_if<LinkTrigger>(&trig)) mu_id = l->event.mu_id;
    if (const auto* p = std::get_if<PreferenceChange>(&trig)) mu_id = p->mu;
    if (const auto* s = std::get_if<ManualSelection>(&trig)) {
      mu_id = s->mu;
      manual = s->rat;
    }
    MuState& m = mus_.at(mu_id);
    if (std::holds_alternative<LinkTrigger>(trig)) m.trigger_pending = false;
    if (const auto* p = std::get_if<PreferenceChange>(&trig)) m.user.preferences = p->preferences;

    const SessionClass cls = classify_trigger(trig);
    if (m.active_session) {
      trace_.add(now, NoteRecord{"trigger_ignored mu=" + std::to_string(mu_id) + " class=" +
                                 std::string(to_string(cls)) + " busy_session=" +
                                 std::to_string(*m.active_session)});
      return;
    }
    const std::optional<RatId> serving =
        m.user.attachment ? std::optional<RatId>(m.user.attachment->rat) : std::nullopt;
    if (manual && serving == manual) {
      trace_.add(now, NoteRecord{"manual_selection_is_serving mu=" + std::to_string(mu_id)});
      return;
    }

    HandoverSession s;
    s.id = next_session_++;
    s.mu_id = mu_id;
    s.session_class = cls;
    s.arrival_time = now;
    s.demand = m.user.demand;
    s.manual_choice = manual;
    commands_.open(s.id);

    // MIIS answer, minus the serving RAT and anything too weak to hold a link.
    std::vector<RatInfoRecord> candidates;
    RssMap rss;
    bool manual_usable = false;
    for (const auto& rec : miis_query(m.user, rats_)) {
      const RatDescriptor* r = find_rat(rec.rat_id);
      const auto v = rss_at(*r, m.user.position);
      const bool usable = v && *v >= sc_.thresholds.at(r->kind).t_down;
      if (manual && rec.rat_id == *manual) manual_usable = usable;
      if (serving == rec.rat_id || !usable) continue;
      candidates.push_back(rec);
      rss[rec.rat_id] = *v;
    }

    std::optional<RejectReason> upstream;
    try {
      s.priority_list = build_priority_list(cls, candidates, rss, m.user.preferences, manual);
    } catch (const EmptyCandidateSet&) {
      upstream = RejectReason::EmptyCandidateSet;
    }
    if (cls == SessionClass::MAVHO && !manual_usable) upstream = RejectReason::OutOfCoverage;
    if (limit_ > 0 && s.priority_list.size() > limit_) s.priority_list.resize(limit_);

    trace_.add(now, SessionCreatedRecord{s.id, s.mu_id, s.session_class, s.priority_list});
    trace_.add(now, TransitionRecord{s.id, s.mu_id, s.session_class, SessionState::Queued,
                                     SessionState::Queued, std::nullopt, std::nullopt});

    if (upstream) {
      move(s, SessionState::AdmissionCheck, now);
      move(s, SessionState::Rejected, now, std::nullopt, upstream);
      sessions_.emplace(s.id, s);
      return;
    }

    queue_.enqueue(s);
    m.active_session = s.id;
    sessions_.emplace(s.id, s);
    command(MihCommandKind::HandoverInitiate, s.id, std::nullopt, now);
    try_start_decision(now);
  }

  // One decision in flight; the head of the queue is taken only when the
  // decision engine is idle.
  void try_start_decision(SimTime now) {
    if (decision_busy_) return;
    auto next = queue_.next_session();
    if (!next) return;
    HandoverSession& s = sessions_.at(*next);
    MuState& m = mus_.at(s.mu_id);
    trace_.add(now, DequeueRecord{s.id, s.session_class, s.arrival_time});
    move(s, SessionState::AdmissionCheck, now);
    decision_busy_ = true;

    const Decision d = decide(s, rats_, m.user,
                              [&](const HandoverSession& sess, SessionState from, std::optional<RatId> rat) {
                                const bool rejected = sess.state == SessionState::Rejected;
                                record_transition(sess, from, rat, now,
                                                  rejected ? std::optional(RejectReason::NoResources)
                                                           : std::nullopt);
                              });
    if (d.accepted) command(MihCommandKind::HandoverPrepare, s.id, d.target, now);
    sched_.schedule(now + sc_.decision_delay, ExecStep{s.id, ExecStepKind::DecisionComplete, s.mu_id, 0});
  }

  void handle(const ExecStep& step, SimTime now) {
    if (step.step == ExecStepKind::FlushDelivery) {
      MuState& m = mus_.at(step.mu);
      const Packet& p = m.packets.at(static_cast<std::size_t>(step.seq_no));
      deliver_over(m, step.seq_no, m.user.attachment ? m.user.attachment->rat : RatId{-1}, p.path, now);
      return;
    }

    HandoverSession& s = sessions_.at(step.session);
    MuState& m = mus_.at(s.mu_id);
    switch (step.step) {
      case ExecStepKind::DecisionComplete: on_decision_complete(s, m, now); break;
      case ExecStepKind::AuthComplete: on_auth_complete(s, m, now); break;
      case ExecStepKind::CoaReady: on_coa_ready(s, now); break;
      case ExecStepKind::BindingAck: on_binding_ack(s, m, now); break;
      case ExecStepKind::Release: on_release(s, m, now); break;
      case ExecStepKind::FlushDelivery: break;
    }
  }

  void on_decision_complete(HandoverSession& s, MuState& m, SimTime now) {
    decision_busy_ = false;
    s.decision_time = now;
    if (s.state == SessionState::Rejected) {
      m.active_session.reset();
      try_start_decision(now);
      return;
    }

    ExecState ex;
    ex.target = s.priority_list.at(s.cursor);
    if (m.user.attachment) ex.source = m.user.attachment->rat;
    ex.old_coa = m.coa;
    ex.plan = plan_execution(now, sc_.timings);

    move(s, SessionState::Executing, now, ex.target);
    command(MihCommandKind::HandoverCommit, s.id, ex.target, now);
    mih_event({MihEventKind::LinkHandoverImminent, ex.target, s.mu_id, now, std::nullopt});

    if (mode_ == Mode::Iam4vho) {
      // Both notifications carry the same timestamp; the HA goes first.
      begin_buffering(ha_, s);
      exec_note(s, "buffering_started", "", now);
      exec_note(s, "source_pos_notified", "target=" + std::to_string(ex.target), now);
    } else {
      m.in_break = true;
      exec_note(s, "detached", "", now);
    }
    exec_.emplace(s.id, ex);
    sched_.schedule(ex.plan.auth_done, ExecStep{s.id, ExecStepKind::AuthComplete, s.mu_id, 0});
    try_start_decision(now);
  }

  void on_auth_complete(HandoverSession& s, MuState& m, SimTime now) {
    ExecState& ex = exec_.at(s.id);
    exec_note(s, "auth_complete", "", now);
    try {
      ex.new_coa = allocate_coa(pools_.at(ex.target), s.id, now);
    } catch (const NoAddressAvailable&) {
      abort_execution(s, m, now);
      return;
    }
    sched_.schedule(ex.plan.coa_ready, ExecStep{s.id, ExecStepKind::CoaReady, s.mu_id, 0});
  }

  void abort_execution(HandoverSession& s, MuState& m, SimTime now) {
    ExecState& ex = exec_.at(s.id);
    find_rat(ex.target)->load -= s.demand;
    if (mode_ == Mode::Iam4vho) {
      for (const Packet& p : ha_.abort(s.id)) {
        if (ex.source) {
          deliver_over(m, p.seq_no, *ex.source, PacketPath::Old, now);
        } else {
          resolve(m, p.seq_no, PacketStatus::Dropped, PacketPath::Buffered, now);
        }
      }
    }
    m.in_break = false;
    move(s, SessionState::Rejected, now, ex.target, RejectReason::NoAddressAvailable);
    s.completion_time = now;
    m.active_session.reset();
  }

  void on_coa_ready(HandoverSession& s, SimTime now) {
    const ExecState& ex = exec_.at(s.id);
    exec_note(s, "coa_ready", ex.new_coa->value, now);
    sched_.schedule(ex.plan.binding_ack, ExecStep{s.id, ExecStepKind::BindingAck, s.mu_id, 0});
  }

  void on_binding_ack(HandoverSession& s, MuState& m, SimTime now) {
    ExecState& ex = exec_.at(s.id);
    const CareOfAddress& coa = *ex.new_coa;
    exec_note(s, "binding_ack", coa.value, now);

    m.user.attachment = Attachment{ex.target, coa.value};
    m.coa = coa;
    m.via_binding = true;
    m.in_break = false;

    SimTime release_at = now + sc_.timings.release_delay;
    if (mode_ == Mode::Iam4vho) {
      const std::vector<Packet> flushed = binding_update(ha_, s.mu_id, coa, pools_.at(ex.target));
      const FlushPlan plan = plan_flush(flushed.size(), now, sc_.timings);
      for (std::size_t i = 0; i < flushed.size(); ++i) {
        sched_.schedule(plan.delivery_times[i],
                        ExecStep{s.id, ExecStepKind::FlushDelivery, s.mu_id, flushed[i].seq_no});
      }
      m.flush_free = plan.drain_complete;
      release_at = plan.release_at;
      exec_note(s, "flush_started", "packets=" + std::to_string(flushed.size()), now);
    } else {
      ha_.bind(s.mu_id, coa.value);
    }
    sched_.schedule(release_at, ExecStep{s.id, ExecStepKind::Release, s.mu_id, 0});
  }

  void on_release(HandoverSession& s, MuState& m, SimTime now) {
    ExecState& ex = exec_.at(s.id);
    RatDescriptor* source = ex.source ? find_rat(*ex.source) : nullptr;
    CoaPool* pool = ex.source ? &pools_.at(*ex.source) : nullptr;
    release_source(source, pool, ex.old_coa, s.demand);
    exec_note(s, "source_released", ex.source ? std::to_string(*ex.source) : "none", now);
    release_times_[s.id] = now;

    command(MihCommandKind::HandoverComplete, s.id, ex.target, now);
    mih_event({MihEventKind::LinkHandoverComplete, ex.target, s.mu_id, now, std::nullopt});
    move(s, SessionState::Complete, now, ex.target);
    s.completion_time = now;
    m.active_session.reset();
  }

  const Scenario& sc_;
  Mode mode_;
  std::uint64_t seed_;
  std::size_t limit_;

  Scheduler<EventPayload> sched_;
  EventTrace trace_;
  std::vector<RatDescriptor> rats_;
  std::map<RatId, CoaPool> pools_;
  std::map<MuId, MuState> mus_;
  std::map<SessionId, HandoverSession> sessions_;
  std::map<SessionId, ExecState> exec_;
  std::map<SessionId, SimTime> release_times_;
  SessionQueue queue_;
  bool decision_busy_ = false;
  SessionId next_session_ = 1;
  HomeAgent ha_;
  SessionCommandTable commands_;
};

inline RunResult run_scenario(const Scenario& scenario, Mode mode, std::uint64_t seed,
                              std::optional<std::size_t> priority_list_limit = std::nullopt) {
  return Simulation(scenario, mode, seed, priority_list_limit).run();
}

}  // namespace iam4vho
