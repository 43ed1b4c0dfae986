// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/merkledag/block_dump.hpp"

#include <fstream>
#include <iterator>

namespace ipfsim::dag {

namespace fs = std::filesystem;

Status write_block_dump(const fs::path& dir, const std::vector<Block>& blocks) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return ec;
  for (const auto& block : blocks) {
    std::ofstream f(dir / block.cid.str(), std::ios::binary | std::ios::trunc);
    if (!f) return std::make_error_code(std::errc::io_error);
    f.write(reinterpret_cast<const char*>(block.data.data()),
            static_cast<std::streamsize>(block.data.size()));
    if (!f) return std::make_error_code(std::errc::io_error);
  }
  return outcome::success();
}

Result<std::size_t> load_block_dump(const fs::path& dir, BlockStore& store) {
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) return ec;
  std::size_t loaded = 0;
  for (const auto& entry : it) {
    if (!entry.is_regular_file()) continue;
    auto cid = Cid::parse(entry.path().filename().string());
    if (!cid) continue;
    std::ifstream f(entry.path(), std::ios::binary);
    Bytes data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    auto put = store.put(Block{std::move(cid).value(), std::move(data)});
    if (!put) return put.error();
    ++loaded;
  }
  return loaded;
}

}  // namespace ipfsim::dag
