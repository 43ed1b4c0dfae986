// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/kaddht/network.hpp"

#include <functional>
#include <vector>

namespace ipfsim::dht {

inline constexpr std::size_t kAutonatProbes = 8;
/// Successful dial-backs needed to promote a peer to server.
inline constexpr int kAutonatServerThreshold = 4;

DhtRole autonat_decide(int successful_dialbacks);

struct AutonatOutcome {
  DhtRole role = DhtRole::client;
  int probes = 0;
  int successes = 0;
};

/// Asks up to eight of `connected` to dial back and decides the role from
/// the number of successful dial-backs.
void autonat_probe(Network& net, const Origin& origin, const std::vector<PeerInfo>& connected,
                   std::function<void(AutonatOutcome)> done);

}  // namespace ipfsim::dht
