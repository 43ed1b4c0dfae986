// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/time.hpp"
#include "ipfsim/kaddht/messages.hpp"

#include <functional>
#include <optional>

namespace ipfsim::dht {

/// Transport seen by DHT walks. Implementations dial on demand; a failed
/// dial or a dropped connection completes `call` with nullopt.
class Network {
 public:
  virtual ~Network() = default;

  virtual VTime now() const = 0;

  virtual void call(const PeerInfo& to, Message request,
                    std::function<void(std::optional<Message>)> on_reply) = 0;

  /// Fire-and-forget over an existing connection. Returns the time needed
  /// to hand the message to the transport.
  virtual Duration send(const PeerInfo& to, Message message) = 0;

  virtual void dial(const PeerInfo& to, std::function<void(bool connected)> done) = 0;

  virtual bool is_connected(const PeerId& peer) const = 0;
};

}  // namespace ipfsim::dht
