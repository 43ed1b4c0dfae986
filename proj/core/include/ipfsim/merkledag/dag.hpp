// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"
#include "ipfsim/common/error.hpp"
#include "ipfsim/multiformats/cid.hpp"

#include <cstdint>
#include <vector>

namespace ipfsim::dag {

using mf::Cid;

inline constexpr std::size_t kDefaultChunkSize = 262144;
inline constexpr std::size_t kDefaultFanout = 174;

/// Content-addressed block. `cid` must certify `data`.
struct Block {
  Cid cid;
  Bytes data;
};

struct Link {
  Cid cid;
  std::uint64_t cumulative_size = 0;  // content bytes reachable through the link

  friend bool operator==(const Link&, const Link&) = default;
};

/// Node of a file DAG. Leaves carry a payload and no links; interior nodes
/// carry links and an empty payload.
///
/// Leaves are stored as raw blocks (codec 0x55, block data = payload).
/// Interior nodes use codec 0x70 with a private deterministic layout:
///   varint(#links) { varint(len) cid-bytes varint(cumulative_size) }*
///   varint(len) payload
/// This is not wire-compatible with dag-pb.
struct DagNode {
  std::vector<Link> links;
  Bytes payload;

  bool is_leaf() const { return links.empty(); }
  std::uint64_t content_size() const;

  Bytes encode() const;
  static Result<DagNode> decode(ByteView data);

  Block to_block() const;

  friend bool operator==(const DagNode&, const DagNode&) = default;
};

/// Fixed-size splitting. Empty content yields a single empty leaf.
std::vector<DagNode> chunk(ByteView content, std::size_t chunk_size = kDefaultChunkSize);

struct DagBuild {
  Cid root;
  std::vector<Block> blocks;  // every distinct block once, root last
};

/// Groups nodes left to right into parents of at most `fanout` links until a
/// single root remains. A lone leaf is its own root.
DagBuild build_dag(const std::vector<DagNode>& leaves, std::size_t fanout = kDefaultFanout);

/// Chunk + build in one step.
DagBuild import_content(ByteView content, std::size_t chunk_size = kDefaultChunkSize,
                        std::size_t fanout = kDefaultFanout);

/// True iff SHA-256(data) equals the CID's digest. Only sha2-256 is supported.
Result<bool> verify_block(const Cid& cid, ByteView data);

/// Child CIDs referenced by a block, in order. Raw leaves have none.
Result<std::vector<Cid>> block_links(const Block& block);

}  // namespace ipfsim::dag
