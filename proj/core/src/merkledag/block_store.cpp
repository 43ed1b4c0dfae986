// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/merkledag/block_store.hpp"

#include <mutex>

namespace ipfsim::dag {

Result<PutOutcome> BlockStore::put(Block block) {
  auto ok = verify_block(block.cid, block.data);
  if (!ok) return ok.error();
  if (!ok.value()) return Errc::verification_failed;
  auto key = block.cid.to_bytes();
  std::unique_lock lock(mutex_);
  if (blocks_.contains(key)) return PutOutcome::deduplicated;
  bytes_ += block.data.size();
  blocks_.emplace(std::move(key), std::move(block));
  return PutOutcome::stored_new;
}

bool BlockStore::has(const Cid& cid) const {
  std::shared_lock lock(mutex_);
  return blocks_.contains(cid.to_bytes());
}

std::optional<Block> BlockStore::get(const Cid& cid) const {
  std::shared_lock lock(mutex_);
  auto it = blocks_.find(cid.to_bytes());
  if (it == blocks_.end()) return std::nullopt;
  return it->second;
}

bool BlockStore::remove(const Cid& cid) {
  std::unique_lock lock(mutex_);
  auto it = blocks_.find(cid.to_bytes());
  if (it == blocks_.end()) return false;
  bytes_ -= it->second.data.size();
  blocks_.erase(it);
  return true;
}

std::size_t BlockStore::block_count() const {
  std::shared_lock lock(mutex_);
  return blocks_.size();
}

std::uint64_t BlockStore::byte_count() const {
  std::shared_lock lock(mutex_);
  return bytes_;
}

std::vector<Cid> BlockStore::cids() const {
  std::shared_lock lock(mutex_);
  std::vector<Cid> out;
  out.reserve(blocks_.size());
  for (const auto& [_, block] : blocks_) out.push_back(block.cid);
  return out;
}

namespace {

Status append_subtree(const BlockStore& store, const Cid& cid, Bytes& out, int depth) {
  if (depth > 64) return Errc::malformed_node;
  auto block = store.get(cid);
  if (!block) return Errc::missing_block;
  if (cid.codec == mf::codec::kRaw) {
    out.insert(out.end(), block->data.begin(), block->data.end());
    return outcome::success();
  }
  auto node = DagNode::decode(block->data);
  if (!node) return node.error();
  if (node.value().is_leaf()) {
    const auto& p = node.value().payload;
    out.insert(out.end(), p.begin(), p.end());
    return outcome::success();
  }
  for (const auto& link : node.value().links) {
    auto st = append_subtree(store, link.cid, out, depth + 1);
    if (!st) return st;
  }
  return outcome::success();
}

}  // namespace

Result<Bytes> reassemble(const BlockStore& store, const Cid& root) {
  Bytes out;
  auto st = append_subtree(store, root, out, 0);
  if (!st) return st.error();
  return out;
}

}  // namespace ipfsim::dag
