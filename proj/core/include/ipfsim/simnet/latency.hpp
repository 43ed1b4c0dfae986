// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/error.hpp"
#include "ipfsim/common/time.hpp"

#include <random>
#include <string>
#include <vector>

namespace ipfsim::sim {

/// Named regions with a symmetric one-way base latency matrix and optional
/// multiplicative lognormal jitter (sigma = 0 disables it).
class RegionLatencyModel {
 public:
  RegionLatencyModel(std::vector<std::string> names, std::vector<std::vector<Duration>> one_way,
                     double jitter_sigma = 0.0);

  /// bahrain, sydney, cape-town, n-california, frankfurt, sao-paulo.
  static RegionLatencyModel six_regions(double jitter_sigma = 0.0);

  Status validate() const;

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t region) const { return names_.at(region); }
  Result<std::size_t> index(std::string_view name) const;

  Duration base(std::size_t a, std::size_t b) const { return matrix_.at(a).at(b); }
  double jitter_sigma() const { return jitter_sigma_; }

  /// One sample of the one-way delay between two regions.
  Duration sample(std::size_t a, std::size_t b, std::mt19937_64& rng) const;

  /// Keeps only the named regions, in the given order.
  Result<RegionLatencyModel> subset(const std::vector<std::string>& names) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Duration>> matrix_;
  double jitter_sigma_;
};

}  // namespace ipfsim::sim
