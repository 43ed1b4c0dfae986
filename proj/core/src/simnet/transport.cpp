// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/simnet/transport.hpp"

#include <algorithm>

namespace ipfsim::sim {

std::string_view transport_name(TransportKind kind) {
  switch (kind) {
    case TransportKind::tcp: return "tcp";
    case TransportKind::quic: return "quic";
    case TransportKind::ws: return "ws";
  }
  return "tcp";
}

Result<TransportKind> parse_transport(std::string_view name) {
  if (name == "tcp") return TransportKind::tcp;
  if (name == "quic") return TransportKind::quic;
  if (name == "ws") return TransportKind::ws;
  return Errc::invalid_config;
}

Status TransportProfile::validate() const {
  if (dial_timeout <= Duration::zero() || peer_dial_cap < dial_timeout ||
      max_concurrent_dials == 0 || handshake_rtts < 0)
    return Errc::invalid_config;
  return outcome::success();
}

TransportProfile TransportProfile::for_kind(TransportKind kind) {
  TransportProfile p;
  p.kind = kind;
  switch (kind) {
    case TransportKind::tcp:
      p.handshake_rtts = 2;  // TCP + security handshake
      break;
    case TransportKind::quic:
      p.handshake_rtts = 1;
      break;
    case TransportKind::ws:
      p.dial_timeout = std::chrono::seconds(45);
      p.handshake_rtts = 3;  // TCP, HTTP upgrade, security
      break;
  }
  return p;
}

Duration dial_failure_time(const TransportProfile& p, std::size_t addresses) {
  const std::size_t n = std::max<std::size_t>(addresses, 1);
  const auto batches = static_cast<Duration::rep>((n + p.max_concurrent_dials - 1) / p.max_concurrent_dials);
  return std::min(p.dial_timeout * batches, p.peer_dial_cap);
}

}  // namespace ipfsim::sim
