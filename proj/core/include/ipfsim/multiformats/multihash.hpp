// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"
#include "ipfsim/common/error.hpp"

#include <compare>
#include <cstdint>

namespace ipfsim::mf {

inline constexpr std::uint64_t kSha2_256 = 0x12;
inline constexpr std::size_t kSha2_256Length = 32;

/// Self-describing digest: varint(code) || varint(length) || digest.
/// The digest length is always digest.size(); decoding enforces the match.
struct Multihash {
  std::uint64_t code = kSha2_256;
  Bytes digest;

  std::size_t digest_length() const { return digest.size(); }

  Bytes to_bytes() const;
  void append_to(Bytes& out) const;

  /// Decodes from the front of `in`, advancing past the consumed bytes.
  static Result<Multihash> read(ByteView& in);
  /// Decodes a complete buffer; trailing bytes are an error.
  static Result<Multihash> from_bytes(ByteView in);

  friend auto operator<=>(const Multihash&, const Multihash&) = default;
};

Multihash multihash_sha256(ByteView data);

}  // namespace ipfsim::mf
