// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/gateway/lru_cache.hpp"

namespace ipfsim::gw {

std::optional<Body> LruCache::get(const std::string& key) {
  std::lock_guard lock(mutex_);
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  order_.splice(order_.begin(), order_, it->second);
  return it->second->value;
}

bool LruCache::contains(const std::string& key) const {
  std::lock_guard lock(mutex_);
  return index_.contains(key);
}

std::vector<std::string> LruCache::put(const std::string& key, Body value) {
  std::lock_guard lock(mutex_);
  std::vector<std::string> evicted;
  const std::uint64_t size = value ? value->size() : 0;
  if (auto it = index_.find(key); it != index_.end()) {
    bytes_ -= it->second->value ? it->second->value->size() : 0;
    order_.erase(it->second);
    index_.erase(it);
  }
  if (size > capacity_) return evicted;
  while (bytes_ + size > capacity_ && !order_.empty()) {
    auto& victim = order_.back();
    bytes_ -= victim.value ? victim.value->size() : 0;
    evicted.push_back(victim.key);
    index_.erase(victim.key);
    order_.pop_back();
  }
  order_.push_front(Entry{key, std::move(value)});
  index_.emplace(key, order_.begin());
  bytes_ += size;
  return evicted;
}

std::uint64_t LruCache::size_bytes() const {
  std::lock_guard lock(mutex_);
  return bytes_;
}

std::size_t LruCache::count() const {
  std::lock_guard lock(mutex_);
  return order_.size();
}

std::vector<std::string> LruCache::keys() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  out.reserve(order_.size());
  for (const auto& e : order_) out.push_back(e.key);
  return out;
}

}  // namespace ipfsim::gw
