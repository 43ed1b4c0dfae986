// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/kaddht/records.hpp"

#include <algorithm>

namespace ipfsim::dht {

std::uint64_t ProviderStore::record_bytes(const PeerId& provider) {
  return 32 + provider.multihash().digest.size() + 2 + 2 * sizeof(std::int64_t);
}

void ProviderStore::add(const DhtKey& key, const PeerId& provider, VTime now, Duration ttl) {
  auto& list = records_[key];
  auto it = std::find_if(list.begin(), list.end(),
                         [&](const ProviderRecord& r) { return r.provider == provider; });
  if (it != list.end()) {
    it->received_at = now;
    it->expires_at = now + ttl;
    return;
  }
  list.push_back(ProviderRecord{key, provider, now, now + ttl});
  bytes_ += record_bytes(provider);
}

std::vector<ProviderRecord> ProviderStore::get(const DhtKey& key, VTime now) const {
  std::vector<ProviderRecord> out;
  auto it = records_.find(key);
  if (it == records_.end()) return out;
  for (const auto& r : it->second)
    if (now < r.expires_at) out.push_back(r);
  return out;
}

std::size_t ProviderStore::expire(VTime now) {
  std::size_t removed = 0;
  for (auto it = records_.begin(); it != records_.end();) {
    auto& list = it->second;
    const auto before = list.size();
    std::erase_if(list, [&](const ProviderRecord& r) {
      if (now < r.expires_at) return false;
      bytes_ -= record_bytes(r.provider);
      return true;
    });
    removed += before - list.size();
    it = list.empty() ? records_.erase(it) : std::next(it);
  }
  return removed;
}

std::size_t ProviderStore::record_count() const {
  std::size_t n = 0;
  for (const auto& [_, list] : records_) n += list.size();
  return n;
}

void PeerRecordStore::put(PeerRecord record) {
  auto subject = record.subject;
  records_.insert_or_assign(std::move(subject), std::move(record));
}

std::optional<PeerRecord> PeerRecordStore::get(const PeerId& subject) const {
  auto it = records_.find(subject);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

}  // namespace ipfsim::dht
