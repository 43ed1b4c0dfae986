// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/simnet/latency.hpp"

#include <algorithm>
#include <cmath>

namespace ipfsim::sim {

using std::chrono::milliseconds;

RegionLatencyModel::RegionLatencyModel(std::vector<std::string> names,
                                       std::vector<std::vector<Duration>> one_way,
                                       double jitter_sigma)
    : names_(std::move(names)), matrix_(std::move(one_way)), jitter_sigma_(jitter_sigma) {}

RegionLatencyModel RegionLatencyModel::six_regions(double jitter_sigma) {
  // One-way milliseconds, roughly half the public inter-region RTTs.
  const int ms[6][6] = {
      //  bah  syd  cpt ncal  fra  sao
      {2, 85, 95, 120, 45, 150},    // bahrain
      {85, 2, 140, 75, 140, 160},   // sydney
      {95, 140, 2, 145, 80, 170},   // cape-town
      {120, 75, 145, 2, 75, 90},    // n-california
      {45, 140, 80, 75, 2, 100},    // frankfurt
      {150, 160, 170, 90, 100, 2},  // sao-paulo
  };
  std::vector<std::vector<Duration>> m(6, std::vector<Duration>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m[i][j] = milliseconds(ms[i][j]);
  return RegionLatencyModel(
      {"bahrain", "sydney", "cape-town", "n-california", "frankfurt", "sao-paulo"}, std::move(m),
      jitter_sigma);
}

Status RegionLatencyModel::validate() const {
  if (names_.empty() || matrix_.size() != names_.size() || jitter_sigma_ < 0.0)
    return Errc::invalid_config;
  for (std::size_t i = 0; i < matrix_.size(); ++i) {
    if (matrix_[i].size() != names_.size()) return Errc::invalid_config;
    for (std::size_t j = 0; j < matrix_.size(); ++j) {
      if (matrix_[i][j] < Duration::zero()) return Errc::invalid_config;
      if (matrix_[i][j] != matrix_[j][i]) return Errc::invalid_config;
    }
  }
  return outcome::success();
}

Result<std::size_t> RegionLatencyModel::index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return Errc::invalid_config;
  return static_cast<std::size_t>(it - names_.begin());
}

Duration RegionLatencyModel::sample(std::size_t a, std::size_t b, std::mt19937_64& rng) const {
  const Duration d = base(a, b);
  if (jitter_sigma_ <= 0.0) return d;
  std::lognormal_distribution<double> jitter(0.0, jitter_sigma_);
  return Duration(static_cast<Duration::rep>(std::llround(static_cast<double>(d.count()) * jitter(rng))));
}

Result<RegionLatencyModel> RegionLatencyModel::subset(const std::vector<std::string>& names) const {
  std::vector<std::size_t> idx;
  for (const auto& n : names) {
    auto i = index(n);
    if (!i) return i.error();
    idx.push_back(i.value());
  }
  std::vector<std::vector<Duration>> m(idx.size(), std::vector<Duration>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m[i][j] = matrix_[idx[i]][idx[j]];
  return RegionLatencyModel(names, std::move(m), jitter_sigma_);
}

}  // namespace ipfsim::sim
