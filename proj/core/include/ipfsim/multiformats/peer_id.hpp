// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"
#include "ipfsim/common/error.hpp"
#include "ipfsim/multiformats/multihash.hpp"

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace ipfsim::mf {

/// Identity of a peer: the sha2-256 multihash of its raw public key bytes.
/// Key-type framing used by deployed libp2p is intentionally not modelled.
class PeerId {
 public:
  PeerId() = default;

  static Result<PeerId> from_public_key(ByteView public_key);
  static Result<PeerId> from_multihash(Multihash mh);
  static Result<PeerId> from_bytes(ByteView bytes);
  /// Accepts the base58btc "Qm..." form.
  static Result<PeerId> parse(std::string_view text);

  const Multihash& multihash() const { return hash_; }
  Bytes to_bytes() const { return hash_.to_bytes(); }
  std::string str() const;

  friend auto operator<=>(const PeerId&, const PeerId&) = default;

 private:
  explicit PeerId(Multihash mh) : hash_(std::move(mh)) {}

  Multihash hash_;
};

Result<PeerId> peer_id_from_public_key(ByteView public_key);

struct PeerIdHash {
  std::size_t operator()(const PeerId& p) const noexcept;
};

}  // namespace ipfsim::mf
