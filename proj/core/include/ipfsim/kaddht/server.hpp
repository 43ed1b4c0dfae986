// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/kaddht/messages.hpp"
#include "ipfsim/kaddht/records.hpp"
#include "ipfsim/kaddht/routing_table.hpp"

#include <optional>
#include <random>

namespace ipfsim::dht {

struct DhtConfig {
  std::size_t k = 20;
  std::size_t alpha = 3;
  Duration provider_ttl = kProviderRecordTtl;
  Duration republish_interval = kRepublishInterval;
  /// Chance that a record holder keeps the provider's addresses from
  /// ADD_PROVIDER and returns them with GET_PROVIDERS replies.
  double addrs_with_records_probability = 0.0;
};

/// The record-holding and routing state of one DHT participant plus the
/// synchronous RPC handler. Asynchronous walks live in lookup.hpp.
class DhtServer {
 public:
  DhtServer(PeerInfo self, DhtRole role, DhtConfig config = {}, std::uint64_t seed = 0);

  const PeerInfo& self() const { return self_; }
  const DhtKey& self_key() const { return table_.self(); }
  DhtRole role() const { return role_; }
  void set_role(DhtRole role) { role_ = role; }
  const DhtConfig& config() const { return config_; }

  RoutingTable& table() { return table_; }
  const RoutingTable& table() const { return table_; }
  ProviderStore& providers() { return providers_; }
  const ProviderStore& providers() const { return providers_; }
  PeerRecordStore& peer_records() { return peer_records_; }
  const PeerRecordStore& peer_records() const { return peer_records_; }

  Origin origin() const { return Origin{role_ == DhtRole::server, self_.addrs}; }

  /// Answers one request. Replies are returned for every request except
  /// ADD_PROVIDER and PUT_PEER_RECORD; DIAL_BACK is asynchronous and is
  /// handled by the owner. Server-role senders are offered to the table.
  std::optional<Message> handle_rpc(const PeerId& from, const Message& request, VTime now,
                                    const LivenessProbe& probe = {});

  /// Byte-level entry point; a malformed frame yields an error so the
  /// caller can drop the connection.
  Result<std::optional<Bytes>> handle_rpc_bytes(const PeerId& from, ByteView request, VTime now,
                                                const LivenessProbe& probe = {});

 private:
  std::vector<PeerInfo> closest_peers(const DhtKey& target, const PeerId& exclude) const;

  PeerInfo self_;
  DhtRole role_;
  DhtConfig config_;
  RoutingTable table_;
  ProviderStore providers_;
  PeerRecordStore peer_records_;
  std::mt19937_64 rng_;
};

}  // namespace ipfsim::dht
