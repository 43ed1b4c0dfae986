// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"
#include "ipfsim/common/error.hpp"
#include "ipfsim/multiformats/multibase.hpp"
#include "ipfsim/multiformats/multihash.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace ipfsim::mf {

namespace codec {
inline constexpr std::uint64_t kRaw = 0x55;
inline constexpr std::uint64_t kDagPb = 0x70;
}  // namespace codec

/// Name of a registered content codec, or nullopt for codes outside the
/// table. Unknown codes still decode; they are carried as plain numbers.
std::optional<std::string_view> codec_name(std::uint64_t code);

struct Cid {
  std::uint64_t version = 1;
  std::uint64_t codec = codec::kDagPb;
  Multihash hash;

  static Cid v1(std::uint64_t codec, Multihash hash) {
    return Cid{1, codec, std::move(hash)};
  }
  static Cid v0(Multihash hash) { return Cid{0, codec::kDagPb, std::move(hash)}; }

  bool known_codec() const { return codec_name(codec).has_value(); }

  /// Binary layout: v1 = varint(1) || varint(codec) || multihash,
  /// v0 = bare multihash.
  Bytes to_bytes() const;
  static Result<Cid> from_bytes(ByteView in);

  /// v1: multibase prefix + encoding; v0: base58btc with no prefix.
  Result<std::string> to_string(Multibase base = Multibase::base32) const;
  /// Canonical text form (base32 for v1, base58btc for v0).
  std::string str() const;

  static Result<Cid> parse(std::string_view text);

  friend auto operator<=>(const Cid&, const Cid&) = default;
};

Result<std::string> encode_cid(const Cid& cid, Multibase base);
Result<Cid> decode_cid(std::string_view text);

struct CidHash {
  std::size_t operator()(const Cid& c) const noexcept;
};

}  // namespace ipfsim::mf
