// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/merkledag/dag.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <vector>

namespace ipfsim::dag {

enum class PutOutcome { stored_new, deduplicated };

/// In-memory content-addressed store keyed by CID binary form. Holds at most
/// one copy per CID. Reads may run concurrently; writes are exclusive.
class BlockStore {
 public:
  BlockStore() = default;
  BlockStore(const BlockStore&) = delete;
  BlockStore& operator=(const BlockStore&) = delete;

  /// Verifies the block before storing; a corrupted block leaves the store
  /// untouched.
  Result<PutOutcome> put(Block block);

  bool has(const Cid& cid) const;
  std::optional<Block> get(const Cid& cid) const;
  bool remove(const Cid& cid);

  std::size_t block_count() const;
  std::uint64_t byte_count() const;
  std::vector<Cid> cids() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<Bytes, Block> blocks_;
  std::uint64_t bytes_ = 0;
};

/// Depth-first reassembly of the content under `root`.
Result<Bytes> reassemble(const BlockStore& store, const Cid& root);

}  // namespace ipfsim::dag
