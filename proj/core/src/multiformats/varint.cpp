// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/multiformats/varint.hpp"

namespace ipfsim::mf {

void append_uvarint(std::uint64_t value, Bytes& out) {
  while (value >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(value | 0x80));
    value >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(value));
}

Bytes encode_uvarint(std::uint64_t value) {
  Bytes out;
  append_uvarint(value, out);
  return out;
}

Result<std::uint64_t> read_uvarint(ByteView& in) {
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < in.size() && i < kMaxVarintBytes; ++i) {
    const std::uint8_t b = in[i];
    value |= static_cast<std::uint64_t>(b & 0x7f) << (7 * i);
    if ((b & 0x80) == 0) {
      // A zero final byte after the first means the encoding was padded.
      if (b == 0 && i > 0) return Errc::malformed_varint;
      in = in.subspan(i + 1);
      return value;
    }
  }
  return Errc::malformed_varint;
}

}  // namespace ipfsim::mf
