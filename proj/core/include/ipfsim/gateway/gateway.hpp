// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/error.hpp"
#include "ipfsim/common/time.hpp"
#include "ipfsim/gateway/lru_cache.hpp"
#include "ipfsim/multiformats/cid.hpp"

#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace ipfsim::gw {

enum class Tier { front, node, network };

std::string_view tier_name(Tier t);

struct GatewayConfig {
  std::string listen = "127.0.0.1:8080";
  std::uint64_t front_capacity_bytes = 64ull << 20;
  /// Pin content fetched from the network in the node store.
  bool pin_fetched = false;

  Status validate() const;
};

struct Fetched {
  Bytes content;
  Duration latency{};  // upstream retrieval time
};

/// What the gateway needs from its IPFS node.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual VTime now() const = 0;
  /// Full content if every block is in the node store; no network traffic.
  virtual std::optional<Bytes> local(const mf::Cid& cid) = 0;
  /// Blocking network retrieval.
  virtual Result<Fetched> fetch(const mf::Cid& cid, bool pin) = 0;
};

struct AccessLogEntry {
  VTime timestamp{};
  std::string cid;
  std::size_t size = 0;
  Duration upstream_latency{};
  std::optional<Tier> tier;
  int status = 200;
};

std::string access_log_line(const AccessLogEntry& e);

struct Response {
  int status = 200;
  std::optional<Tier> tier;
  Body body;
  std::string error;
};

struct CacheStats {
  std::size_t requests = 0;  // status 200 entries
  std::size_t errors = 0;
  std::size_t front = 0;
  std::size_t node = 0;
  std::size_t network = 0;
  double front_rate = 0.0;
  double node_rate = 0.0;
  double network_rate = 0.0;
  double front_bytes_share = 0.0;
  double node_bytes_share = 0.0;
  double network_bytes_share = 0.0;
};

Result<CacheStats> cache_stats(const std::vector<AccessLogEntry>& log, VTime from, VTime to);
Result<CacheStats> cache_stats(const std::vector<AccessLogEntry>& log);

struct GatewayCounters {
  std::uint64_t local_lookups = 0;
  std::uint64_t network_fetches = 0;
  std::uint64_t coalesced = 0;
};

/// Path-based HTTP-to-IPFS bridge: GET /ipfs/{cid} served from the front
/// LRU, then the node store, then a network retrieval. Safe to call from
/// many threads; concurrent misses on one CID share a single retrieval.
class Gateway {
 public:
  Gateway(GatewayConfig config, Backend& backend);

  Response handle(std::string_view method, std::string_view path);
  Response handle_get(std::string_view path) { return handle("GET", path); }

  const GatewayConfig& config() const { return config_; }
  LruCache& front() { return front_; }
  GatewayCounters counters() const;
  std::vector<AccessLogEntry> access_log() const;
  Result<CacheStats> stats() const { return cache_stats(access_log()); }

 private:
  Result<Fetched> fetch_once(const mf::Cid& cid, const std::string& key);
  void record(AccessLogEntry e);

  GatewayConfig config_;
  Backend& backend_;
  LruCache front_;
  mutable std::mutex mutex_;
  std::vector<AccessLogEntry> log_;
  GatewayCounters counters_;
  std::map<std::string, std::shared_future<Result<Fetched>>> in_flight_;
};

}  // namespace ipfsim::gw
