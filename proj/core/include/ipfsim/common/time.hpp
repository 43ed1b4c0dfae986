// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>

namespace ipfsim {

/// Virtual durations and instants share one nanosecond representation.
/// Instants are measured from the start of the simulation (t = 0).
using Duration = std::chrono::nanoseconds;
using VTime = std::chrono::nanoseconds;

using namespace std::chrono_literals;

constexpr Duration from_seconds(double s) {
  return Duration{static_cast<std::int64_t>(s * 1e9)};
}

constexpr double to_seconds(Duration d) {
  return static_cast<double>(d.count()) / 1e9;
}

constexpr double to_millis(Duration d) {
  return static_cast<double>(d.count()) / 1e6;
}

}  // namespace ipfsim
