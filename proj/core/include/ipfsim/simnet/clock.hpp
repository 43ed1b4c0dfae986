// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/time.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace ipfsim::sim {

/// Virtual clock plus pending-event queue. Events fire in (time, insertion
/// sequence) order, so equal-time events keep the order they were scheduled.
class SimClock {
 public:
  VTime now() const { return now_; }

  /// Events in the past are clamped to now.
  void schedule_at(VTime at, std::function<void()> fn);
  void schedule(Duration delay, std::function<void()> fn) { schedule_at(now_ + delay, std::move(fn)); }

  /// Fires the next event. False when the queue is empty.
  bool step();
  /// Runs until the queue is empty.
  std::uint64_t run();
  /// Fires every event at or before `until`, then advances the clock to it.
  std::uint64_t run_until(VTime until);

  std::size_t pending() const { return heap_.size(); }
  std::uint64_t fired() const { return fired_; }

 private:
  struct Event {
    VTime at;
    std::uint64_t seq;
    std::function<void()> fn;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.at != b.at ? a.at > b.at : a.seq > b.seq;
    }
  };

  VTime now_{};
  std::uint64_t seq_ = 0;
  std::uint64_t fired_ = 0;
  std::vector<Event> heap_;
};

}  // namespace ipfsim::sim
