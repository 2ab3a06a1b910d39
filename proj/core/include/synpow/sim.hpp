#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "synpow/sim_time.hpp"

namespace synpow {

class SchedulingInPast : public std::logic_error {
 public:
  SchedulingInPast() : std::logic_error("event scheduled before current simulation time") {}
};

// Deterministic discrete-event loop. Events fire in (time, insertion order):
// ties on the timestamp are broken FIFO, so identical runs replay identically.
class Simulator {
 public:
  SimTime now() const { return now_; }

  void schedule(SimTime at, std::function<void()> fn) {
    if (at < now_) throw SchedulingInPast{};
    queue_.push(Event{at, next_seq_++, std::move(fn)});
  }

  void schedule_in(SimTime delay, std::function<void()> fn) {
    schedule(now_ + delay, std::move(fn));
  }

  // Runs every event with timestamp <= horizon (inclusive), then parks the
  // clock at the horizon. Later events stay pending.
  void run_until(SimTime horizon) {
    while (!queue_.empty() && queue_.top().at <= horizon) {
      Event ev = std::move(const_cast<Event&>(queue_.top()));
      queue_.pop();
      now_ = ev.at;
      ++processed_;
      ev.fn();
    }
    now_ = horizon;
  }

  bool idle() const { return queue_.empty(); }
  std::size_t pending() const { return queue_.size(); }
  std::uint64_t processed() const { return processed_; }

 private:
  struct Event {
    SimTime at;
    std::uint64_t seq;
    std::function<void()> fn;
  };
  struct FiresLater {
    bool operator()(const Event& a, const Event& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, FiresLater> queue_;
  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t processed_ = 0;
};

}  // namespace synpow
