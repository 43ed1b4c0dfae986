// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/error.hpp"
#include "ipfsim/node/config.hpp"
#include "ipfsim/simnet/churn.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ipfsim::sim {

enum class Workload { none, publish_retrieve, crawl, monitor };

std::string_view workload_name(Workload w);

/// Flat `key = value` scenario. Lines starting with '#' are comments;
/// durations are seconds; booleans are on/off or true/false. See
/// docs in README for the full key list.
struct Scenario {
  std::string name = "default";
  std::uint64_t seed = 1;
  std::vector<std::string> regions{"bahrain",      "sydney",    "cape-town",
                                   "n-california", "frankfurt", "sao-paulo"};

  // population
  std::size_t servers = 300;  // bulk DHT servers, round-robin over regions
  std::size_t clients = 0;    // NATed peers
  double dead_fraction = 0.0;  // servers offline from the start yet still in tables
  double quic_fraction = 0.0;
  double ws_fraction = 0.0;
  double many_addrs_fraction = 0.0;
  std::size_t many_addrs = 9;

  // links
  double jitter_sigma = 0.0;
  double bandwidth_mbps = 100.0;
  int negotiate_rtts = 1;

  // workload
  Workload workload = Workload::publish_retrieve;
  std::size_t iterations = 10;
  std::size_t object_size = 512 * 1024;
  std::size_t object_size_max = 0;  // > object_size: uniform random sizes
  Duration iteration_gap = std::chrono::seconds(60);
  Duration horizon = std::chrono::hours(24);
  Duration monitor_window = std::chrono::hours(24);
  std::size_t crawl_concurrency = 64;

  // churn
  bool churn = false;
  ChurnModel churn_model;
  bool log_churn = false;

  // protocol
  std::size_t k = 20;
  std::size_t alpha = 3;
  Duration bitswap_timeout = std::chrono::seconds(1);
  bool bitswap_early_exit = false;
  double addrs_with_records_probability = 0.0;
  bool republish = true;
  Duration republish_interval = std::chrono::hours(12);
  Duration record_ttl = std::chrono::hours(24);
  node::ProvideGranularity provide_granularity = node::ProvideGranularity::root_only;

  Status validate() const;
  node::NodeConfig node_config() const;
  /// Canonical text form; parses back to an equal scenario.
  std::string to_text() const;
};

Result<Scenario> parse_scenario(std::string_view text);
Result<Scenario> load_scenario(const std::filesystem::path& path);

}  // namespace ipfsim::sim
