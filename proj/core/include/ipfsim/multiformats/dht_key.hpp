// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/multiformats/cid.hpp"
#include "ipfsim/multiformats/peer_id.hpp"
#include "ipfsim/multiformats/sha256.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace ipfsim::mf {

/// Point in the shared 256-bit key space. Keys compare as big-endian
/// unsigned integers, which is also the order used for XOR distances.
struct DhtKey {
  std::array<std::uint8_t, 32> bits{};

  friend auto operator<=>(const DhtKey&, const DhtKey&) = default;

  DhtKey operator^(const DhtKey& other) const {
    DhtKey out;
    for (std::size_t i = 0; i < bits.size(); ++i) out.bits[i] = bits[i] ^ other.bits[i];
    return out;
  }

  bool is_zero() const {
    for (auto b : bits)
      if (b != 0) return false;
    return true;
  }

  std::string hex() const;
};

/// SHA-256 of the CIDv1 binary form. A v0 CID is widened to v1 first so both
/// spellings of the same content land on the same key.
DhtKey dht_key(const Cid& cid);

/// SHA-256 of the PeerId's multihash bytes.
DhtKey dht_key(const PeerId& peer);

struct DhtKeyHash {
  std::size_t operator()(const DhtKey& k) const noexcept;
};

}  // namespace ipfsim::mf
