// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/simnet/clock.hpp"

#include <algorithm>

namespace ipfsim::sim {

void SimClock::schedule_at(VTime at, std::function<void()> fn) {
  heap_.push_back(Event{std::max(at, now_), seq_++, std::move(fn)});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
}

bool SimClock::step() {
  if (heap_.empty()) return false;
  std::pop_heap(heap_.begin(), heap_.end(), Later{});
  Event ev = std::move(heap_.back());
  heap_.pop_back();
  now_ = ev.at;
  ++fired_;
  ev.fn();
  return true;
}

std::uint64_t SimClock::run() {
  std::uint64_t n = 0;
  while (step()) ++n;
  return n;
}

std::uint64_t SimClock::run_until(VTime until) {
  std::uint64_t n = 0;
  while (!heap_.empty() && heap_.front().at <= until) {
    step();
    ++n;
  }
  now_ = std::max(now_, until);
  return n;
}

}  // namespace ipfsim::sim
