// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/merkledag/dag.hpp"

#include "ipfsim/common/wire.hpp"
#include "ipfsim/multiformats/sha256.hpp"

#include <algorithm>
#include <set>

namespace ipfsim::dag {

std::uint64_t DagNode::content_size() const {
  if (is_leaf()) return payload.size();
  std::uint64_t total = 0;
  for (const auto& l : links) total += l.cumulative_size;
  return total;
}

Bytes DagNode::encode() const {
  wire::Writer w;
  w.varint(links.size());
  for (const auto& l : links) {
    w.bytes(l.cid.to_bytes());
    w.varint(l.cumulative_size);
  }
  w.bytes(payload);
  return w.take();
}

Result<DagNode> DagNode::decode(ByteView data) {
  wire::Reader r(data);
  auto count = r.varint();
  if (!count) return Errc::malformed_node;
  if (count.value() > data.size()) return Errc::malformed_node;
  DagNode node;
  node.links.reserve(count.value());
  for (std::uint64_t i = 0; i < count.value(); ++i) {
    auto cid_bytes = r.bytes_view();
    if (!cid_bytes) return Errc::malformed_node;
    auto cid = Cid::from_bytes(cid_bytes.value());
    if (!cid) return Errc::malformed_node;
    auto size = r.varint();
    if (!size) return Errc::malformed_node;
    node.links.push_back(Link{std::move(cid).value(), size.value()});
  }
  auto payload = r.bytes();
  if (!payload) return Errc::malformed_node;
  if (!r.empty()) return Errc::malformed_node;
  node.payload = std::move(payload).value();
  return node;
}

Block DagNode::to_block() const {
  if (is_leaf()) return Block{Cid::v1(mf::codec::kRaw, mf::multihash_sha256(payload)), payload};
  Bytes data = encode();
  return Block{Cid::v1(mf::codec::kDagPb, mf::multihash_sha256(data)), std::move(data)};
}

std::vector<DagNode> chunk(ByteView content, std::size_t chunk_size) {
  std::vector<DagNode> leaves;
  if (content.empty()) {
    leaves.emplace_back();
    return leaves;
  }
  leaves.reserve((content.size() + chunk_size - 1) / chunk_size);
  for (std::size_t off = 0; off < content.size(); off += chunk_size) {
    const auto n = std::min(chunk_size, content.size() - off);
    DagNode leaf;
    leaf.payload.assign(content.begin() + static_cast<std::ptrdiff_t>(off),
                        content.begin() + static_cast<std::ptrdiff_t>(off + n));
    leaves.push_back(std::move(leaf));
  }
  return leaves;
}

DagBuild build_dag(const std::vector<DagNode>& leaves, std::size_t fanout) {
  fanout = std::max<std::size_t>(fanout, 2);
  DagBuild out;
  std::set<Bytes> seen;
  auto emit = [&](Block block) -> Link {
    Link link{block.cid, 0};
    if (seen.insert(block.cid.to_bytes()).second) out.blocks.push_back(std::move(block));
    return link;
  };

  std::vector<Link> level;
  level.reserve(leaves.size());
  for (const auto& leaf : leaves) {
    auto link = emit(leaf.to_block());
    link.cumulative_size = leaf.content_size();
    level.push_back(std::move(link));
  }

  while (level.size() > 1) {
    std::vector<Link> parents;
    parents.reserve((level.size() + fanout - 1) / fanout);
    for (std::size_t i = 0; i < level.size(); i += fanout) {
      DagNode parent;
      const auto end = std::min(level.size(), i + fanout);
      parent.links.assign(level.begin() + static_cast<std::ptrdiff_t>(i),
                          level.begin() + static_cast<std::ptrdiff_t>(end));
      auto link = emit(parent.to_block());
      link.cumulative_size = parent.content_size();
      parents.push_back(std::move(link));
    }
    level = std::move(parents);
  }
  out.root = level.front().cid;
  return out;
}

DagBuild import_content(ByteView content, std::size_t chunk_size, std::size_t fanout) {
  return build_dag(chunk(content, chunk_size), fanout);
}

Result<bool> verify_block(const Cid& cid, ByteView data) {
  if (cid.hash.code != mf::kSha2_256) return Errc::unsupported_hash;
  const auto digest = mf::sha256(data);
  return std::equal(digest.begin(), digest.end(), cid.hash.digest.begin(), cid.hash.digest.end());
}

Result<std::vector<Cid>> block_links(const Block& block) {
  if (block.cid.codec == mf::codec::kRaw) return std::vector<Cid>{};
  auto node = DagNode::decode(block.data);
  if (!node) return node.error();
  std::vector<Cid> out;
  out.reserve(node.value().links.size());
  for (auto& l : node.value().links) out.push_back(std::move(l.cid));
  return out;
}

}  // namespace ipfsim::dag
