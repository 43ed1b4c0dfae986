// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/multiformats/peer_id.hpp"

#include "ipfsim/multiformats/multibase.hpp"

#include <cstring>

namespace ipfsim::mf {

Result<PeerId> PeerId::from_public_key(ByteView public_key) {
  if (public_key.empty()) return Errc::empty_public_key;
  return PeerId(multihash_sha256(public_key));
}

Result<PeerId> PeerId::from_multihash(Multihash mh) {
  if (mh.code != kSha2_256) return Errc::unsupported_hash;
  if (mh.digest.size() != kSha2_256Length) return Errc::digest_length_mismatch;
  return PeerId(std::move(mh));
}

Result<PeerId> PeerId::from_bytes(ByteView bytes) {
  auto mh = Multihash::from_bytes(bytes);
  if (!mh) return mh.error();
  return from_multihash(std::move(mh).value());
}

Result<PeerId> PeerId::parse(std::string_view text) {
  if (text.empty()) return Errc::empty_input;
  auto raw = base58btc_decode(text);
  if (!raw) return raw.error();
  return from_bytes(raw.value());
}

std::string PeerId::str() const { return base58btc_encode(hash_.to_bytes()); }

Result<PeerId> peer_id_from_public_key(ByteView public_key) {
  return PeerId::from_public_key(public_key);
}

std::size_t PeerIdHash::operator()(const PeerId& p) const noexcept {
  std::size_t h = 0;
  const auto& d = p.multihash().digest;
  std::memcpy(&h, d.data(), std::min(sizeof(h), d.size()));
  return h;
}

}  // namespace ipfsim::mf
