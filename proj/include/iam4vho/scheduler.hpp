#pragma once

#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "iam4vho/core.hpp"

namespace iam4vho {

template <typename Payload>
struct ScheduledEvent {
  SimTime time = 0;
  std::uint64_t seq = 0;
  Payload payload;
};

// Discrete-event queue with a single logical clock. Dispatch order is
// lexicographic on (time, seq); seq is the insertion counter, so equal-time
// events leave in the order they were scheduled.
template <typename Payload>
class Scheduler {
 public:
  using Event = ScheduledEvent<Payload>;

  std::uint64_t schedule(SimTime time, Payload payload) {
    if (time < now_) {
      throw InvalidSchedule("event at t=" + std::to_string(time) + "us is before clock " +
                            std::to_string(now_) + "us");
    }
    const std::uint64_t seq = next_seq_++;
    heap_.push(Event{time, seq, std::move(payload)});
    return seq;
  }

  // Dispatches every event with time <= t_end, including ones scheduled by
  // the handler itself. The clock ends at t_end (or stays put when t_end is
  // in the past).
  template <typename Handler>
  std::size_t run_until(SimTime t_end, Handler&& handle) {
    std::size_t n = 0;
    while (!heap_.empty() && heap_.top().time <= t_end) {
      Event ev = heap_.top();
      heap_.pop();
      now_ = ev.time;
      handle(ev);
      ++n;
    }
    if (t_end > now_) now_ = t_end;
    return n;
  }

  SimTime now() const { return now_; }
  bool empty() const { return heap_.empty(); }
  std::size_t pending() const { return heap_.size(); }

  // Remaining events in dispatch order; used to account for work left at the
  // end of a run.
  std::vector<Event> drain() {
    std::vector<Event> out;
    while (!heap_.empty()) {
      out.push_back(heap_.top());
      heap_.pop();
    }
    return out;
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
};

}  // namespace iam4vho
