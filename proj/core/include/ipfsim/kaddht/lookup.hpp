// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/kaddht/network.hpp"
#include "ipfsim/kaddht/server.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace ipfsim::dht {

enum class LookupKind { find_node, get_providers, find_peer };

struct LookupResult {
  /// The k closest candidates when the walk stopped, ascending by distance.
  /// Candidates that failed to answer are included (they are terminal).
  std::vector<PeerInfo> closest;
  std::vector<PeerInfo> providers;  // get_providers
  std::optional<PeerInfo> peer;     // find_peer
  bool found = false;               // providers or peer discovered

  int rounds = 0;  // deepest query wave issued (seeds are round 1)
  int queried = 0;
  int failed = 0;
  VTime started{};
  VTime finished{};
  /// Best known distance after every reply, in arrival order.
  std::vector<Distance> best_distance_trace;

  Duration duration() const { return finished - started; }
};

using LookupCallback = std::function<void(Result<LookupResult>)>;

/// Multi-round iterative walk. Seeds with the k closest local entries, keeps
/// up to alpha queries in flight, and stops once the k closest known
/// candidates are all queried or failed. get_providers stops early on the
/// first non-empty provider set; find_peer stops once the subject's
/// addresses are known.
void iterative_lookup(Network& net, const DhtServer& local, LookupKind kind, const DhtKey& target,
                      std::optional<PeerId> subject, LookupCallback done);

void iterative_find_peers(Network& net, const DhtServer& local, const DhtKey& target,
                          LookupCallback done);

void iterative_find_providers(Network& net, const DhtServer& local, const mf::Cid& cid,
                              LookupCallback done);

void iterative_find_peer(Network& net, const DhtServer& local, const PeerId& peer,
                         LookupCallback done);

}  // namespace ipfsim::dht
