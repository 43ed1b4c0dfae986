// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/error.hpp"
#include "ipfsim/common/time.hpp"

#include <string_view>

namespace ipfsim::sim {

enum class TransportKind { tcp, quic, ws };

std::string_view transport_name(TransportKind kind);
Result<TransportKind> parse_transport(std::string_view name);

struct TransportProfile {
  TransportKind kind = TransportKind::tcp;
  Duration dial_timeout = std::chrono::seconds(5);
  /// Upper bound on the time spent dialing all addresses of one peer.
  Duration peer_dial_cap = std::chrono::seconds(60);
  std::size_t max_concurrent_dials = 8;
  /// Round trips needed to establish a connection.
  int handshake_rtts = 2;

  Status validate() const;

  static TransportProfile for_kind(TransportKind kind);
};

/// Time to give up on a peer whose `addresses` all time out: addresses are
/// dialed in batches of `max_concurrent_dials`, capped per peer.
Duration dial_failure_time(const TransportProfile& p, std::size_t addresses);

}  // namespace ipfsim::sim
