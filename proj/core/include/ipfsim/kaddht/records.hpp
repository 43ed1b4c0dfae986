// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/time.hpp"
#include "ipfsim/kaddht/distance.hpp"
#include "ipfsim/kaddht/peer_info.hpp"

#include <map>
#include <optional>
#include <vector>

namespace ipfsim::dht {

inline constexpr Duration kProviderRecordTtl = std::chrono::hours(24);
inline constexpr Duration kRepublishInterval = std::chrono::hours(12);

struct ProviderRecord {
  DhtKey key;
  PeerId provider;
  VTime received_at{};
  VTime expires_at{};
};

struct PeerRecord {
  PeerId subject;
  std::vector<Multiaddr> addresses;
  VTime received_at{};
};

/// Provider records keyed by content key. A record is live on
/// [received_at, expires_at); reads never extend its lifetime.
class ProviderStore {
 public:
  /// Stores or refreshes the (key, provider) record.
  void add(const DhtKey& key, const PeerId& provider, VTime now, Duration ttl = kProviderRecordTtl);

  std::vector<ProviderRecord> get(const DhtKey& key, VTime now) const;

  /// Drops expired records; returns how many were removed.
  std::size_t expire(VTime now);

  std::size_t record_count() const;
  /// Approximate storage footprint (key + provider multihash + timestamps).
  std::uint64_t byte_count() const { return bytes_; }

 private:
  static std::uint64_t record_bytes(const PeerId& provider);

  std::map<DhtKey, std::vector<ProviderRecord>> records_;
  std::uint64_t bytes_ = 0;
};

class PeerRecordStore {
 public:
  void put(PeerRecord record);
  std::optional<PeerRecord> get(const PeerId& subject) const;
  std::size_t size() const { return records_.size(); }

 private:
  std::map<PeerId, PeerRecord> records_;
};

}  // namespace ipfsim::dht
