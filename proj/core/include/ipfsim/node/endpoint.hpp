// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"
#include "ipfsim/common/time.hpp"
#include "ipfsim/multiformats/peer_id.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace ipfsim::node {

using mf::PeerId;

/// A node's view of the network: connections, byte-level request/response
/// and timers. The simulator provides one endpoint per host; protocol code
/// never reads a wall clock.
class Endpoint {
 public:
  virtual ~Endpoint() = default;

  virtual VTime now() const = 0;
  virtual void schedule(Duration delay, std::function<void()> fn) = 0;

  virtual bool is_connected(const PeerId& peer) const = 0;
  virtual std::vector<PeerId> connected_peers() const = 0;

  /// Opens (or joins an in-progress) connection. Already connected peers
  /// complete immediately with success.
  virtual void dial(const PeerId& peer, std::function<void(bool connected)> done) = 0;

  /// Fresh inbound-reachability check from this host to `peer`; never
  /// reuses or creates a connection.
  virtual void dial_back(const PeerId& peer, std::function<void(bool reachable)> done) = 0;

  /// Dials when needed, delivers `payload` and waits for the reply. nullopt
  /// when the dial fails, the connection drops or no reply is produced.
  virtual void request(const PeerId& peer, Bytes payload,
                       std::function<void(std::optional<Bytes>)> on_reply) = 0;

  /// One-way message over an existing connection; dropped when not
  /// connected. Returns the time needed to put it on the wire.
  virtual Duration send(const PeerId& peer, Bytes payload) = 0;

  virtual void disconnect(const PeerId& peer) = 0;

  /// Cost of securing and negotiating protocols on a fresh connection.
  virtual Duration negotiate_cost(const PeerId& peer) const = 0;

  /// Ground-truth liveness used for k-bucket maintenance.
  virtual bool probe_alive(const PeerId& peer) const = 0;
};

/// Inbound side: the endpoint hands every message to its node. `respond` is
/// empty for one-way messages.
using Responder = std::function<void(std::optional<Bytes>)>;

}  // namespace ipfsim::node
