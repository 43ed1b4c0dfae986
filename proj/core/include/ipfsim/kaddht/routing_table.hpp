// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/time.hpp"
#include "ipfsim/kaddht/distance.hpp"
#include "ipfsim/kaddht/peer_info.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace ipfsim::dht {

inline constexpr std::size_t kBucketSize = 20;

struct TableEntry {
  PeerInfo peer;
  DhtKey key;
  VTime last_seen{};
};

/// Entries ordered least-recently-seen first.
class KBucket {
 public:
  const std::vector<TableEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  friend class RoutingTable;
  std::vector<TableEntry> entries_;
};

enum class InsertOutcome { inserted, refreshed, rejected_full };

struct InsertResult {
  InsertOutcome outcome;
  std::optional<PeerId> evicted;  // set when a dead resident made room
};

/// Answers whether a resident peer still responds. The simulator answers
/// from ground truth; a real transport would dial.
using LivenessProbe = std::function<bool(const PeerId&)>;

/// 256 k-buckets over the XOR metric around `self`.
class RoutingTable {
 public:
  explicit RoutingTable(DhtKey self, std::size_t bucket_size = kBucketSize);

  const DhtKey& self() const { return self_; }
  std::size_t bucket_size() const { return bucket_size_; }

  /// Existing peers move to most-recently-seen. A full bucket probes its
  /// least-recently-seen entry and replaces it only if the probe fails.
  Result<InsertResult> insert(const PeerInfo& peer, DhtRole role, VTime now,
                              const LivenessProbe& probe = {});
  /// Same as insert() with the peer's key precomputed.
  Result<InsertResult> insert(const PeerInfo& peer, const DhtKey& key, DhtRole role, VTime now,
                              const LivenessProbe& probe = {});

  bool remove(const PeerId& peer);
  bool contains(const PeerId& peer) const;
  const TableEntry* find(const PeerId& peer) const;

  /// Up to `count` entries ordered by ascending distance to `target`.
  std::vector<TableEntry> closest(const DhtKey& target, std::size_t count) const;

  std::size_t size() const { return size_; }
  const KBucket& bucket(int index) const { return buckets_[static_cast<std::size_t>(index)]; }
  std::vector<TableEntry> entries() const;

 private:
  const TableEntry* find_with_key(const PeerId& peer, const DhtKey& key) const;

  DhtKey self_;
  std::size_t bucket_size_;
  std::array<KBucket, kKeyBits> buckets_{};
  std::size_t size_ = 0;
};

std::vector<TableEntry> closest_local(const RoutingTable& table, const DhtKey& target,
                                      std::size_t count);

}  // namespace ipfsim::dht
