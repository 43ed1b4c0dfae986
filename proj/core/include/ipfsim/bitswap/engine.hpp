// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/bitswap/messages.hpp"
#include "ipfsim/bitswap/wantlist.hpp"
#include "ipfsim/merkledag/block_store.hpp"
#include "ipfsim/multiformats/peer_id.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace ipfsim::bitswap {

using mf::PeerId;

inline constexpr Duration kDefaultDhtFallback = std::chrono::seconds(1);

struct BitswapConfig {
  /// Opportunistic discovery gives up and hands over to the DHT after this.
  Duration fallback_timeout = kDefaultDhtFallback;
  /// Fall back as soon as every asked peer answered DONT_HAVE instead of
  /// waiting for the timeout.
  bool early_exit = false;
};

/// Transport seen by the Bitswap engine. `call` fails (nullopt) when the
/// peer is gone or the connection drops.
class Network {
 public:
  virtual ~Network() = default;
  virtual VTime now() const = 0;
  virtual void schedule(Duration delay, std::function<void()> fn) = 0;
  virtual std::vector<PeerId> connected_peers() const = 0;
  virtual void call(const PeerId& to, Message request,
                    std::function<void(std::optional<Message>)> on_reply) = 0;
  virtual void disconnect(const PeerId& peer) = 0;
};

struct WantOutcome {
  enum class Kind { block, fallback } kind = Kind::fallback;
  std::optional<PeerId> holder;     // HAVE responder that delivered the block
  std::optional<dag::Block> block;  // verified, already in the store
  VTime started{};
  VTime have_at{};      // first HAVE arrival (discovery ends here)
  VTime resolved_at{};  // block arrival or fallback time
  int peers_asked = 0;
  int dont_haves = 0;
};

/// One engine per node. Serves inbound wants from the local store and runs
/// opportunistic discovery among connected peers.
class Engine {
 public:
  Engine(Network& net, dag::BlockStore& store, BitswapConfig config = {});

  const BitswapConfig& config() const { return config_; }
  Wantlist& wantlist() { return wantlist_; }
  const Wantlist& wantlist() const { return wantlist_; }

  /// WANT_HAVE -> HAVE / DONT_HAVE; WANT_BLOCK -> BLOCK / DONT_HAVE.
  std::optional<Message> serve(const Message& inbound) const;

  /// Broadcasts WANT_HAVE to every connected peer and sends WANT_BLOCK to
  /// the first HAVE responder; a verified BLOCK resolves the want. Without
  /// any HAVE by the timeout (or, with early exit, once every asked peer
  /// said DONT_HAVE) it resolves as a fallback and the want stays listed.
  /// A HAVE stops the timer: the content has been discovered. If the
  /// holder's block fails verification the next HAVE responder is tried.
  void want(const mf::Cid& cid, std::function<void(WantOutcome)> done);

  /// WANT_BLOCK -> BLOCK from a specific peer. A block that fails
  /// verification disconnects the sender. Verified blocks go to the store
  /// and leave the wantlist.
  void fetch(const PeerId& from, const mf::Cid& cid, std::function<void(Result<dag::Block>)> done);

  std::uint64_t blocks_received() const { return blocks_received_; }
  std::uint64_t verification_failures() const { return verification_failures_; }

 private:
  Network& net_;
  dag::BlockStore& store_;
  BitswapConfig config_;
  Wantlist wantlist_;
  std::uint64_t blocks_received_ = 0;
  std::uint64_t verification_failures_ = 0;
};

}  // namespace ipfsim::bitswap
