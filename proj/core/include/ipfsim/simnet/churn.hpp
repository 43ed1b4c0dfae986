// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/error.hpp"
#include "ipfsim/common/time.hpp"
#include "ipfsim/multiformats/peer_id.hpp"
#include "ipfsim/simnet/stats.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace ipfsim::sim {

enum class DistKind { exponential, lognormal, weibull };

Result<DistKind> parse_dist(std::string_view name);

/// Positive duration distribution parameterised by its mean.
struct DurationDist {
  DistKind kind = DistKind::exponential;
  Duration mean = std::chrono::hours(1);
  /// lognormal: sigma of the underlying normal; weibull: shape k.
  double shape = 1.0;

  Duration sample(std::mt19937_64& rng) const;
};

struct ChurnModel {
  DurationDist session;
  DurationDist offline;
  /// Per-region multiplier applied to session means.
  std::map<std::size_t, double> region_session_scale;
  std::uint64_t seed = 0;

  Status validate() const;
  Duration sample_session(std::size_t region, std::mt19937_64& rng) const;
  Duration sample_offline(std::mt19937_64& rng) const;
};

struct SessionObservation {
  mf::PeerId peer;
  VTime start{};
  VTime end{};
  bool censored = false;  // still online when the window closed

  Duration length() const { return end - start; }
};

/// Alternating on/off sessions for `peers` over [0, window); the first
/// session starts at a uniformly random phase.
std::vector<SessionObservation> generate_sessions(const ChurnModel& model,
                                                  const std::vector<mf::PeerId>& peers,
                                                  Duration window, std::mt19937_64& rng);

struct ChurnCdf {
  std::vector<double> lengths_s;  // included session lengths, seconds
  std::vector<CdfPoint> cdf;
  std::size_t included = 0;
  std::size_t excluded = 0;  // started in the second half of the window
  std::size_t censored = 0;
  double mean_s = 0.0;
};

/// Create-based estimator: keeps sessions starting in the first half of
/// the window, truncating those still open at the window end.
Result<ChurnCdf> churn_cdf_create_based(const std::vector<SessionObservation>& observations,
                                        VTime window_start, Duration window);

}  // namespace ipfsim::sim
