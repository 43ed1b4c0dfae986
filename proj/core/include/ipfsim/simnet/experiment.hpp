// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/simnet/crawler.hpp"
#include "ipfsim/simnet/network.hpp"
#include "ipfsim/simnet/scenario.hpp"
#include "ipfsim/simnet/stats.hpp"

#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace ipfsim::sim {

/// A populated network: one static measurement node per region plus the
/// bulk DHT population, built converged.
struct World {
  std::unique_ptr<SimNetwork> net;
  std::vector<std::size_t> vantage;  // one per region, in region order
  std::vector<std::size_t> servers;  // bulk servers (dead ones included)
  std::vector<std::size_t> clients;
  std::vector<std::size_t> dead;
  std::size_t crawler = 0;
};

Result<World> build_world(const Scenario& scenario, std::uint64_t seed);

/// Alternating online/offline sessions for `hosts` until `horizon`.
/// Every transition is passed to `on_change` (may be empty).
void apply_churn(SimNetwork& net, const std::vector<std::size_t>& hosts, const ChurnModel& model,
                 VTime horizon, std::uint64_t seed,
                 std::function<void(std::size_t host, bool online)> on_change = {});

struct PublicationRecord {
  std::size_t iteration = 0;
  std::string region;
  bool success = false;
  node::PublicationReport report;
};

struct RetrievalRecord {
  std::size_t iteration = 0;
  std::string region;
  node::RetrievalReport report;  // content dropped after verification
  bool content_matches = false;
};

struct ExperimentResult {
  std::vector<PublicationRecord> publications;
  std::vector<RetrievalRecord> retrievals;
};

/// Round-robin publisher over the vantage nodes; after each publication the
/// other vantage nodes retrieve the object concurrently and drop their
/// connections to the provider. Emits one JSON line per operation.
void experiment_publish_retrieve(World& world, const Scenario& scenario, std::uint64_t seed,
                                 std::function<void(const std::string&)> log,
                                 std::function<void(ExperimentResult)> done);

struct RunOutput {
  Scenario scenario;
  std::uint64_t seed = 0;
  std::vector<std::string> log;  // JSON lines
  ExperimentResult experiment;
  std::optional<CrawlResult> crawl;
  std::vector<SessionObservation> sessions;
  TrafficCounters traffic;
  std::uint64_t in_flight_bytes = 0;
  std::uint64_t events = 0;
  VTime finished{};
};

/// Builds the world and runs the scenario's workload to completion.
/// Identical (scenario, seed) pairs produce identical logs.
Result<RunOutput> run(const Scenario& scenario, std::uint64_t seed);

/// Percentile rows (seconds) per region plus an "all" row.
std::vector<PercentileRow> publication_table(const ExperimentResult& r);
std::vector<PercentileRow> retrieval_table(const ExperimentResult& r);

/// Writes the log, percentile tables and CDF samples under `dir`.
Status write_outputs(const RunOutput& out, const std::filesystem::path& dir);

}  // namespace ipfsim::sim
