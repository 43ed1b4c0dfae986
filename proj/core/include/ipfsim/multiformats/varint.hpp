// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"
#include "ipfsim/common/error.hpp"

#include <cstdint>

namespace ipfsim::mf {

/// Longest accepted unsigned varint (63 bits of payload).
inline constexpr std::size_t kMaxVarintBytes = 9;

void append_uvarint(std::uint64_t value, Bytes& out);

Bytes encode_uvarint(std::uint64_t value);

/// Decodes one minimal LEB128 integer from the front of `in` and advances it.
/// Over-long (non-minimal) and unterminated encodings are rejected.
Result<std::uint64_t> read_uvarint(ByteView& in);

}  // namespace ipfsim::mf
