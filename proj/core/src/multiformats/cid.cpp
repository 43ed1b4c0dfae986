// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/multiformats/cid.hpp"

#include "ipfsim/multiformats/varint.hpp"

#include <cstring>

namespace ipfsim::mf {
namespace {

bool valid_v0(const Cid& cid) {
  return cid.codec == codec::kDagPb && cid.hash.code == kSha2_256 &&
         cid.hash.digest.size() == kSha2_256Length;
}

}  // namespace

std::optional<std::string_view> codec_name(std::uint64_t code) {
  switch (code) {
    case codec::kRaw: return "raw";
    case codec::kDagPb: return "dag-pb";
    default: return std::nullopt;
  }
}

Bytes Cid::to_bytes() const {
  Bytes out;
  out.reserve(hash.digest.size() + 6);
  if (version != 0) {
    append_uvarint(version, out);
    append_uvarint(codec, out);
  }
  hash.append_to(out);
  return out;
}

Result<Cid> Cid::from_bytes(ByteView in) {
  if (in.empty()) return Errc::empty_input;
  // A bare sha2-256 multihash starts 0x12 0x20, which is never a valid
  // version byte.
  if (in.size() >= 2 && in[0] == kSha2_256 && in[1] == kSha2_256Length) {
    auto mh = Multihash::from_bytes(in);
    if (!mh) return mh.error();
    return Cid::v0(std::move(mh).value());
  }
  auto version = read_uvarint(in);
  if (!version) return version.error();
  if (version.value() != 1) return Errc::invalid_cid_version;
  auto codec = read_uvarint(in);
  if (!codec) return codec.error();
  auto mh = Multihash::read(in);
  if (!mh) return mh.error();
  if (!in.empty()) return Errc::trailing_bytes;
  return Cid::v1(codec.value(), std::move(mh).value());
}

Result<std::string> Cid::to_string(Multibase base) const {
  if (version == 0) {
    if (base != Multibase::base58btc) return Errc::unsupported_base;
    if (!valid_v0(*this)) return Errc::invalid_v0_cid;
    return base58btc_encode(hash.to_bytes());
  }
  if (version != 1) return Errc::invalid_cid_version;
  return multibase_encode(base, to_bytes());
}

std::string Cid::str() const {
  auto s = to_string(version == 0 ? Multibase::base58btc : Multibase::base32);
  return s ? std::move(s).value() : std::string{};
}

Result<Cid> Cid::parse(std::string_view text) {
  if (text.empty()) return Errc::empty_input;
  if (text.starts_with("Qm")) {
    auto raw = base58btc_decode(text);
    if (!raw) return raw.error();
    auto mh = Multihash::from_bytes(raw.value());
    if (!mh) return mh.error();
    Cid cid = Cid::v0(std::move(mh).value());
    if (!valid_v0(cid)) return Errc::invalid_v0_cid;
    return cid;
  }
  auto raw = multibase_decode(text);
  if (!raw) return raw.error();
  auto cid = Cid::from_bytes(raw.value());
  if (!cid) return cid;
  // The multibase form always carries an explicit version.
  if (cid.value().version != 1) return Errc::invalid_cid_version;
  return cid;
}

Result<std::string> encode_cid(const Cid& cid, Multibase base) { return cid.to_string(base); }

Result<Cid> decode_cid(std::string_view text) { return Cid::parse(text); }

std::size_t CidHash::operator()(const Cid& c) const noexcept {
  std::size_t h = 0;
  std::memcpy(&h, c.hash.digest.data(), std::min(sizeof(h), c.hash.digest.size()));
  return h ^ (c.codec * 0x9e3779b97f4a7c15ULL) ^ c.version;
}

}  // namespace ipfsim::mf
