// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/multiformats/multihash.hpp"

#include "ipfsim/multiformats/sha256.hpp"
#include "ipfsim/multiformats/varint.hpp"

namespace ipfsim::mf {

void Multihash::append_to(Bytes& out) const {
  append_uvarint(code, out);
  append_uvarint(digest.size(), out);
  out.insert(out.end(), digest.begin(), digest.end());
}

Bytes Multihash::to_bytes() const {
  Bytes out;
  out.reserve(digest.size() + 4);
  append_to(out);
  return out;
}

Result<Multihash> Multihash::read(ByteView& in) {
  auto code = read_uvarint(in);
  if (!code) return code.error();
  auto length = read_uvarint(in);
  if (!length) return length.error();
  if (length.value() > in.size()) return Errc::digest_length_mismatch;
  if (code.value() == kSha2_256 && length.value() != kSha2_256Length)
    return Errc::digest_length_mismatch;
  Multihash mh{code.value(), Bytes(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(length.value()))};
  in = in.subspan(length.value());
  return mh;
}

Result<Multihash> Multihash::from_bytes(ByteView in) {
  auto mh = read(in);
  if (!mh) return mh;
  if (!in.empty()) return Errc::trailing_bytes;
  return mh;
}

Multihash multihash_sha256(ByteView data) {
  const auto digest = sha256(data);
  return Multihash{kSha2_256, Bytes(digest.begin(), digest.end())};
}

}  // namespace ipfsim::mf
