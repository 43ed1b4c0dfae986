// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/multiformats/dht_key.hpp"

#include "ipfsim/multiformats/varint.hpp"

#include <cstring>

namespace ipfsim::mf {

std::string DhtKey::hex() const { return to_hex(bits); }

DhtKey dht_key(const Cid& cid) {
  Bytes canonical;
  canonical.reserve(cid.hash.digest.size() + 6);
  append_uvarint(1, canonical);
  append_uvarint(cid.codec, canonical);
  cid.hash.append_to(canonical);
  return DhtKey{sha256(canonical)};
}

DhtKey dht_key(const PeerId& peer) { return DhtKey{sha256(peer.to_bytes())}; }

std::size_t DhtKeyHash::operator()(const DhtKey& k) const noexcept {
  std::size_t h = 0;
  std::memcpy(&h, k.bits.data(), sizeof(h));
  return h;
}

}  // namespace ipfsim::mf
