// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"
#include "ipfsim/common/error.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace ipfsim::wire {

/// Append-only writer for the tagged binary envelope shared by DHT and
/// Bitswap messages. Integers are unsigned LEB128.
class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void varint(std::uint64_t v);
  void bytes(ByteView v);  // length-prefixed
  void raw(ByteView v) { out_.insert(out_.end(), v.begin(), v.end()); }
  void string(std::string_view s);
  void boolean(bool b) { u8(b ? 1 : 0); }

  const Bytes& data() const { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(ByteView in) : in_(in) {}

  Result<std::uint8_t> u8();
  Result<std::uint64_t> varint();
  Result<Bytes> bytes();
  Result<ByteView> bytes_view();
  Result<std::string> string();
  Result<bool> boolean();

  bool empty() const { return in_.empty(); }
  std::size_t remaining() const { return in_.size(); }

 private:
  ByteView in_;
};

/// Frames a message as varint(length) || tag || body.
Bytes frame(std::uint8_t tag, ByteView body);

struct Frame {
  std::uint8_t tag;
  ByteView body;
};

/// Parses one complete frame; the input must contain nothing else.
Result<Frame> unframe(ByteView in);

}  // namespace ipfsim::wire
