// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/kaddht/lookup.hpp"

#include <map>

namespace ipfsim::dht {

struct ProvideReport {
  DhtKey key;
  VTime started{};
  Duration walk{};       // DHT walk to the k closest peers
  Duration rpc_phase{};  // dials + ADD_PROVIDER sends after the walk
  std::vector<PeerId> targets;    // peers the record was aimed at
  std::vector<PeerId> stored_at;  // targets the ADD_PROVIDER was sent to
  int dials = 0;
  int dial_failures = 0;
  int walk_rounds = 0;

  Duration total() const { return walk + rpc_phase; }
};

using ProvideCallback = std::function<void(Result<ProvideReport>)>;

/// Walks to the k closest peers of `key`, dials those not yet connected and
/// sends ADD_PROVIDER without waiting for replies. The rpc phase ends when
/// every dial has resolved and every send has been issued.
void provide(Network& net, const DhtServer& local, const DhtKey& key, ProvideCallback done);

/// Remembers when each pinned key was last provided.
class RepublishTracker {
 public:
  explicit RepublishTracker(Duration interval = kRepublishInterval) : interval_(interval) {}

  void provided(const mf::Cid& cid, VTime at);
  void forget(const mf::Cid& cid);

  /// Keys whose last provide is at least one interval old, in CID order.
  std::vector<mf::Cid> due(VTime now) const;

  std::size_t size() const { return last_.size(); }

 private:
  Duration interval_;
  std::map<mf::Cid, VTime> last_;
};

}  // namespace ipfsim::dht
