// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/common/wire.hpp"

#include "ipfsim/multiformats/varint.hpp"

namespace ipfsim::wire {

void Writer::varint(std::uint64_t v) { mf::append_uvarint(v, out_); }

void Writer::bytes(ByteView v) {
  varint(v.size());
  raw(v);
}

void Writer::string(std::string_view s) {
  varint(s.size());
  out_.insert(out_.end(), s.begin(), s.end());
}

Result<std::uint8_t> Reader::u8() {
  if (in_.empty()) return Errc::truncated_input;
  auto v = in_.front();
  in_ = in_.subspan(1);
  return v;
}

Result<std::uint64_t> Reader::varint() { return mf::read_uvarint(in_); }

Result<ByteView> Reader::bytes_view() {
  auto len = varint();
  if (!len) return len.error();
  if (len.value() > in_.size()) return Errc::truncated_input;
  auto out = in_.subspan(0, len.value());
  in_ = in_.subspan(len.value());
  return out;
}

Result<Bytes> Reader::bytes() {
  auto v = bytes_view();
  if (!v) return v.error();
  return Bytes(v.value().begin(), v.value().end());
}

Result<std::string> Reader::string() {
  auto v = bytes_view();
  if (!v) return v.error();
  return std::string(v.value().begin(), v.value().end());
}

Result<bool> Reader::boolean() {
  auto v = u8();
  if (!v) return v.error();
  if (v.value() > 1) return Errc::malformed_message;
  return v.value() == 1;
}

Bytes frame(std::uint8_t tag, ByteView body) {
  Bytes out;
  out.reserve(body.size() + 6);
  mf::append_uvarint(body.size() + 1, out);
  out.push_back(tag);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Result<Frame> unframe(ByteView in) {
  auto len = mf::read_uvarint(in);
  if (!len) return len.error();
  if (len.value() == 0) return Errc::malformed_message;
  if (len.value() > in.size()) return Errc::truncated_input;
  if (len.value() < in.size()) return Errc::trailing_bytes;
  return Frame{in.front(), in.subspan(1)};
}

}  // namespace ipfsim::wire
