// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"

#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ipfsim::gw {

using Body = std::shared_ptr<const Bytes>;

/// Byte-budget LRU keyed by CID string. A value larger than the whole
/// budget is not admitted. Thread-safe; every access takes the lock since
/// hits reorder the recency list.
class LruCache {
 public:
  explicit LruCache(std::uint64_t capacity_bytes) : capacity_(capacity_bytes) {}

  std::optional<Body> get(const std::string& key);
  bool contains(const std::string& key) const;

  /// Inserts or replaces `key`; returns the keys evicted to make room.
  std::vector<std::string> put(const std::string& key, Body value);

  std::uint64_t capacity() const { return capacity_; }
  std::uint64_t size_bytes() const;
  std::size_t count() const;
  /// Keys from most to least recently used.
  std::vector<std::string> keys() const;

 private:
  struct Entry {
    std::string key;
    Body value;
  };

  std::uint64_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> order_;  // front = most recent
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
  std::uint64_t bytes_ = 0;
};

}  // namespace ipfsim::gw
