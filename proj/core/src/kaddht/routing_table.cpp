// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/kaddht/routing_table.hpp"

#include <algorithm>

namespace ipfsim::dht {

RoutingTable::RoutingTable(DhtKey self, std::size_t bucket_size)
    : self_(self), bucket_size_(bucket_size) {}

Result<InsertResult> RoutingTable::insert(const PeerInfo& peer, DhtRole role, VTime now,
                                          const LivenessProbe& probe) {
  return insert(peer, mf::dht_key(peer.id), role, now, probe);
}

Result<InsertResult> RoutingTable::insert(const PeerInfo& peer, const DhtKey& key, DhtRole role,
                                          VTime now, const LivenessProbe& probe) {
  if (role != DhtRole::server) return Errc::insert_client;
  auto index = bucket_index(self_, key);
  if (!index) return Errc::insert_self;
  auto& entries = buckets_[static_cast<std::size_t>(index.value())].entries_;

  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const TableEntry& e) { return e.peer.id == peer.id; });
  if (it != entries.end()) {
    TableEntry entry = std::move(*it);
    entries.erase(it);
    entry.last_seen = now;
    if (!peer.addrs.empty()) entry.peer.addrs = peer.addrs;
    entries.push_back(std::move(entry));
    return InsertResult{InsertOutcome::refreshed, std::nullopt};
  }

  if (entries.size() < bucket_size_) {
    entries.push_back(TableEntry{peer, key, now});
    ++size_;
    return InsertResult{InsertOutcome::inserted, std::nullopt};
  }

  // Full bucket: keep a responsive least-recently-seen resident.
  if (probe) {
    auto& oldest = entries.front();
    if (!probe(oldest.peer.id)) {
      PeerId evicted = oldest.peer.id;
      entries.erase(entries.begin());
      entries.push_back(TableEntry{peer, key, now});
      return InsertResult{InsertOutcome::inserted, std::move(evicted)};
    }
    // The resident answered, so it is now the most recently seen.
    oldest.last_seen = now;
    std::rotate(entries.begin(), entries.begin() + 1, entries.end());
  }
  return InsertResult{InsertOutcome::rejected_full, std::nullopt};
}

bool RoutingTable::remove(const PeerId& peer) {
  const auto key = mf::dht_key(peer);
  auto index = bucket_index(self_, key);
  if (!index) return false;
  auto& entries = buckets_[static_cast<std::size_t>(index.value())].entries_;
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const TableEntry& e) { return e.peer.id == peer; });
  if (it == entries.end()) return false;
  entries.erase(it);
  --size_;
  return true;
}

const TableEntry* RoutingTable::find_with_key(const PeerId& peer, const DhtKey& key) const {
  auto index = bucket_index(self_, key);
  if (!index) return nullptr;
  const auto& entries = buckets_[static_cast<std::size_t>(index.value())].entries_;
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const TableEntry& e) { return e.peer.id == peer; });
  return it == entries.end() ? nullptr : &*it;
}

const TableEntry* RoutingTable::find(const PeerId& peer) const {
  return find_with_key(peer, mf::dht_key(peer));
}

bool RoutingTable::contains(const PeerId& peer) const { return find(peer) != nullptr; }

std::vector<TableEntry> RoutingTable::closest(const DhtKey& target, std::size_t count) const {
  std::vector<std::pair<Distance, const TableEntry*>> all;
  all.reserve(size_);
  for (const auto& bucket : buckets_)
    for (const auto& e : bucket.entries_) all.emplace_back(xor_distance(e.key, target), &e);
  const auto n = std::min(count, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<TableEntry> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(*all[i].second);
  return out;
}

std::vector<TableEntry> RoutingTable::entries() const {
  std::vector<TableEntry> out;
  out.reserve(size_);
  for (const auto& bucket : buckets_)
    out.insert(out.end(), bucket.entries_.begin(), bucket.entries_.end());
  return out;
}

std::vector<TableEntry> closest_local(const RoutingTable& table, const DhtKey& target,
                                      std::size_t count) {
  return table.closest(target, count);
}

}  // namespace ipfsim::dht
