// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/bitswap/address_book.hpp"
#include "ipfsim/bitswap/engine.hpp"
#include "ipfsim/kaddht/server.hpp"
#include "ipfsim/merkledag/dag.hpp"

namespace ipfsim::node {

enum class RolePolicy { automatic, force_client, force_server };
enum class ProvideGranularity { root_only, all_blocks };

struct NodeConfig {
  RolePolicy role_policy = RolePolicy::automatic;
  std::size_t chunk_size = dag::kDefaultChunkSize;
  std::size_t fanout = dag::kDefaultFanout;
  dht::DhtConfig dht;
  bitswap::BitswapConfig bitswap;
  std::size_t address_book_capacity = bitswap::kAddressBookCapacity;
  ProvideGranularity provide_granularity = ProvideGranularity::root_only;
  bool republish = true;
  /// Unpinned blocks older than this are garbage collected.
  Duration cache_ttl = std::chrono::hours(24);
  /// After a retrieval the node announces itself as a provider.
  bool provide_after_retrieve = true;
  /// Drop the provider connection once a retrieval completes so the next
  /// retrieval cannot be answered through Bitswap.
  bool disconnect_after_retrieve = false;

  Status validate() const;
};

}  // namespace ipfsim::node
