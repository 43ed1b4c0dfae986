// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/bitswap/address_book.hpp"
#include "ipfsim/bitswap/engine.hpp"
#include "ipfsim/kaddht/autonat.hpp"
#include "ipfsim/kaddht/lookup.hpp"
#include "ipfsim/kaddht/provide.hpp"
#include "ipfsim/kaddht/server.hpp"
#include "ipfsim/merkledag/block_store.hpp"
#include "ipfsim/node/config.hpp"
#include "ipfsim/node/endpoint.hpp"
#include "ipfsim/node/phase_timing.hpp"

#include <map>
#include <memory>
#include <set>

namespace ipfsim::node {

using mf::Cid;

struct PublicationReport {
  Cid root;
  std::size_t blocks_total = 0;
  std::size_t blocks_added = 0;  // new to the local store
  dht::ProvideReport provide;    // root announcement
  int extra_provides = 0;        // all-blocks granularity
};

struct RetrievalReport {
  Cid cid;
  bool success = false;
  std::error_code error;
  VTime started{};
  PhaseTiming phases;

  bool via_bitswap = false;  // a connected peer answered within the timeout
  bool fallback = false;     // DHT discovery was needed
  Duration bitswap_wait{};   // want() to fallback or HAVE
  VTime provider_walk_started{};  // when DHT discovery began
  Duration provider_walk{};  // GET_PROVIDERS walk
  Duration peer_walk{};      // FIND_PEER walk (zero when skipped)
  int walks = 0;
  bool addrs_from_record = false;
  bool addrs_from_book = false;
  int provider_dials = 0;
  std::uint64_t dht_rpcs = 0;  // DHT requests issued during this retrieval
  std::size_t blocks = 0;
  std::uint64_t bytes = 0;
  std::optional<PeerId> provider;
  Bytes content;

  Duration total() const { return phases.total(); }
};

struct NodeCounters {
  std::uint64_t dht_requests_sent = 0;
  std::uint64_t dht_messages_sent = 0;  // fire-and-forget
  std::uint64_t bitswap_requests_sent = 0;
  std::uint64_t inbound_requests = 0;
  std::uint64_t protocol_errors = 0;
};

/// A peer: block store, pin set, DHT participant and Bitswap engine wired
/// to one endpoint. All work is driven by endpoint events on one logical
/// thread.
class Node {
 public:
  Node(dht::PeerInfo self, NodeConfig config, Endpoint& endpoint, std::uint64_t seed = 0);
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;
  ~Node();

  const PeerId& id() const { return dht_.self().id; }
  const dht::PeerInfo& info() const { return dht_.self(); }
  dht::DhtRole role() const { return dht_.role(); }
  void set_role(dht::DhtRole role) { dht_.set_role(role); }
  const NodeConfig& config() const { return config_; }

  dht::DhtServer& dht() { return dht_; }
  const dht::DhtServer& dht() const { return dht_; }
  dag::BlockStore& store() { return store_; }
  const dag::BlockStore& store() const { return store_; }
  bitswap::Engine& bitswap() { return *bitswap_; }
  bitswap::AddressBook& address_book() { return book_; }
  const bitswap::AddressBook& address_book() const { return book_; }
  const std::set<Cid>& pins() const { return pins_; }
  const NodeCounters& counters() const { return counters_; }
  dht::Network& dht_network();

  /// Imports content into the local store without announcing it.
  dag::DagBuild import(ByteView content, std::size_t* added = nullptr);

  /// chunk -> build DAG -> store -> pin root -> provide.
  void publish(ByteView content, std::function<void(Result<PublicationReport>)> done);

  /// Announces `cid` (root only) and records it for republishing.
  void provide(const Cid& cid, std::function<void(Result<dht::ProvideReport>)> done);

  /// Content discovery via Bitswap then the DHT, peer discovery, dial,
  /// negotiate and fetch. Completes exactly once.
  void retrieve(const Cid& cid, std::function<void(RetrievalReport)> done);

  /// Re-provides every pinned CID whose last provide is at least one
  /// republish interval old. Returns the CIDs re-provided.
  std::vector<Cid> republish_tick(VTime now);

  /// Evicts unpinned blocks cached longer than the cache TTL.
  std::vector<Cid> gc_tick(VTime now);

  void pin(const Cid& root);
  void unpin(const Cid& root);

  /// Publishes this node's peer record to the peers closest to its key.
  void announce_peer_record(std::function<void(bool)> done = {});

  /// Asks connected peers to dial back and adopts the resulting role
  /// (unless a forced policy is configured).
  void run_autonat(std::function<void(dht::AutonatOutcome)> done);

  /// Entry point for every inbound message from `from`.
  void handle_inbound(const PeerId& from, ByteView payload, Responder respond);

  /// Last time this node saw `cid` enter the store as a cached block.
  std::optional<VTime> cached_at(const Cid& cid) const;

 private:
  class DhtNet;
  class BitswapNet;
  struct Retrieval;

  void fetch_dag(std::shared_ptr<Retrieval> r, const PeerId& from);
  void fetch_next(std::shared_ptr<Retrieval> r);
  void complete(std::shared_ptr<Retrieval> r, std::error_code ec);
  void discover_via_dht(std::shared_ptr<Retrieval> r);
  void resolve_provider(std::shared_ptr<Retrieval> r, std::vector<dht::PeerInfo> providers);
  void dial_providers(std::shared_ptr<Retrieval> r, std::vector<dht::PeerInfo> candidates,
                      std::size_t index);
  void note_cached(const dag::Block& block);
  std::set<Bytes> protected_blocks() const;

  NodeConfig config_;
  Endpoint& endpoint_;
  dht::DhtServer dht_;
  dag::BlockStore store_;
  bitswap::AddressBook book_;
  std::unique_ptr<DhtNet> dht_net_;
  std::unique_ptr<BitswapNet> bitswap_net_;
  std::unique_ptr<bitswap::Engine> bitswap_;
  dht::RepublishTracker republish_;
  std::set<Cid> pins_;
  std::map<Cid, VTime> cached_;
  NodeCounters counters_;
};

}  // namespace ipfsim::node
