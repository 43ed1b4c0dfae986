// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/multiformats/multiaddr.hpp"
#include "ipfsim/multiformats/peer_id.hpp"

#include <vector>

namespace ipfsim::dht {

using mf::Multiaddr;
using mf::PeerId;

enum class DhtRole { client, server };

inline const char* role_name(DhtRole r) { return r == DhtRole::server ? "server" : "client"; }

struct PeerInfo {
  PeerId id;
  std::vector<Multiaddr> addrs;

  friend bool operator==(const PeerInfo&, const PeerInfo&) = default;
};

}  // namespace ipfsim::dht
