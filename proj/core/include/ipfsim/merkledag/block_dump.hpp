// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/merkledag/block_store.hpp"

#include <filesystem>

namespace ipfsim::dag {

/// A block dump is a directory holding one file per block, named by the
/// block's canonical CID string and containing the raw block bytes.
Status write_block_dump(const std::filesystem::path& dir, const std::vector<Block>& blocks);

/// Loads every file in `dir` whose name parses as a CID; each block is
/// verified on the way in.
Result<std::size_t> load_block_dump(const std::filesystem::path& dir, BlockStore& store);

}  // namespace ipfsim::dag
