// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/node/node.hpp"
#include "ipfsim/simnet/clock.hpp"
#include "ipfsim/simnet/latency.hpp"
#include "ipfsim/simnet/transport.hpp"

#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace ipfsim::sim {

using mf::PeerId;

struct HostSpec {
  std::size_t region = 0;
  TransportKind transport = TransportKind::tcp;
  std::size_t addresses = 1;
  /// Accepts inbound connections (not behind a NAT).
  bool dialable = true;
  bool online = true;
  dht::DhtRole role = dht::DhtRole::server;
};

struct NetConfig {
  double bandwidth_bps = 100e6;
  /// Secure channel + protocol negotiation on a fresh connection, in RTTs.
  int negotiate_rtts = 1;
};

struct TrafficCounters {
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  std::uint64_t dropped = 0;
};

class SimNetwork;

/// One simulated machine: endpoint for its node plus connection state.
class Host final : public node::Endpoint {
 public:
  Host(SimNetwork& net, std::size_t index, HostSpec spec, PeerId id);

  std::size_t index() const { return index_; }
  const HostSpec& spec() const { return spec_; }
  const PeerId& id() const { return id_; }
  const std::vector<mf::Multiaddr>& addrs() const { return addrs_; }
  bool online() const { return spec_.online; }
  node::Node& node() { return *node_; }
  const node::Node& node() const { return *node_; }
  const TrafficCounters& traffic() const { return traffic_; }
  const std::set<std::size_t>& connections() const { return connections_; }

  VTime now() const override;
  void schedule(Duration delay, std::function<void()> fn) override;
  bool is_connected(const PeerId& peer) const override;
  std::vector<PeerId> connected_peers() const override;
  void dial(const PeerId& peer, std::function<void(bool)> done) override;
  void dial_back(const PeerId& peer, std::function<void(bool)> done) override;
  void request(const PeerId& peer, Bytes payload,
               std::function<void(std::optional<Bytes>)> on_reply) override;
  Duration send(const PeerId& peer, Bytes payload) override;
  void disconnect(const PeerId& peer) override;
  Duration negotiate_cost(const PeerId& peer) const override;
  bool probe_alive(const PeerId& peer) const override;

 private:
  friend class SimNetwork;

  SimNetwork& net_;
  std::size_t index_;
  HostSpec spec_;
  PeerId id_;
  std::vector<mf::Multiaddr> addrs_;
  std::unique_ptr<node::Node> node_;
  std::set<std::size_t> connections_;
  std::map<std::size_t, std::vector<std::function<void(bool)>>> pending_dials_;
  TrafficCounters traffic_;
};

/// Deterministic message-level network: per-pair latency from the region
/// model, fixed per-link bandwidth, transport-specific dial timeouts and
/// persistent connections that drop when either end goes offline.
class SimNetwork {
 public:
  SimNetwork(RegionLatencyModel latency, NetConfig config, std::uint64_t seed);
  SimNetwork(const SimNetwork&) = delete;
  SimNetwork& operator=(const SimNetwork&) = delete;
  ~SimNetwork();

  SimClock& clock() { return clock_; }
  VTime now() const { return clock_.now(); }
  const RegionLatencyModel& latency() const { return latency_; }
  const NetConfig& config() const { return config_; }
  std::mt19937_64& rng() { return rng_; }

  /// Creates a host with a fresh key pair and a node using `node_config`.
  std::size_t add_host(HostSpec spec, const node::NodeConfig& node_config);

  std::size_t size() const { return hosts_.size(); }
  Host& host(std::size_t i) { return *hosts_.at(i); }
  const Host& host(std::size_t i) const { return *hosts_.at(i); }
  std::optional<std::size_t> index_of(const PeerId& peer) const;

  void set_online(std::size_t i, bool online);
  bool connected(std::size_t a, std::size_t b) const;
  void disconnect(std::size_t a, std::size_t b);

  Duration base_one_way(std::size_t a, std::size_t b) const;
  Duration one_way(std::size_t a, std::size_t b);
  Duration rtt(std::size_t a, std::size_t b) const { return 2 * base_one_way(a, b); }
  Duration transfer_time(std::size_t bytes) const;
  Duration handshake_time(std::size_t a, std::size_t b) const;
  Duration dial_failure_time(std::size_t target) const;

  TrafficCounters totals() const;
  std::uint64_t in_flight_bytes() const { return in_flight_bytes_; }
  std::uint64_t dials_started() const { return dials_started_; }

 private:
  friend class Host;

  void start_dial(std::size_t from, std::size_t to, std::function<void(bool)> done);
  void finish_dial(std::size_t from, std::size_t to, bool ok);
  void transmit(std::size_t from, std::size_t to, Bytes payload,
                std::function<void(std::optional<Bytes>)> on_reply);
  void deliver_reply(std::size_t from, std::size_t to, std::optional<Bytes> reply,
                     std::function<void(std::optional<Bytes>)> on_reply);

  RegionLatencyModel latency_;
  NetConfig config_;
  std::mt19937_64 rng_;
  std::mt19937_64 key_rng_;
  SimClock clock_;
  std::vector<std::unique_ptr<Host>> hosts_;
  std::unordered_map<PeerId, std::size_t, mf::PeerIdHash> index_;
  std::uint64_t in_flight_bytes_ = 0;
  std::uint64_t dials_started_ = 0;
};

/// Fills every routing table with every server-role host (stale offline
/// servers included) in a seeded random order and installs each server's
/// peer record at its k closest servers.
void build_converged(SimNetwork& net, std::uint64_t seed);

}  // namespace ipfsim::sim
