// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"
#include "ipfsim/common/error.hpp"
#include "ipfsim/multiformats/cid.hpp"

#include <variant>

namespace ipfsim::bitswap {

using mf::Cid;

namespace tag {
inline constexpr std::uint8_t kWantHave = 0x21;
inline constexpr std::uint8_t kHave = 0x22;
inline constexpr std::uint8_t kDontHave = 0x23;
inline constexpr std::uint8_t kWantBlock = 0x24;
inline constexpr std::uint8_t kBlock = 0x25;
}  // namespace tag

inline bool is_bitswap_tag(std::uint8_t t) { return t >= tag::kWantHave && t <= tag::kBlock; }

struct WantHave {
  Cid cid;
  friend bool operator==(const WantHave&, const WantHave&) = default;
};
struct Have {
  Cid cid;
  friend bool operator==(const Have&, const Have&) = default;
};
struct DontHave {
  Cid cid;
  friend bool operator==(const DontHave&, const DontHave&) = default;
};
struct WantBlock {
  Cid cid;
  friend bool operator==(const WantBlock&, const WantBlock&) = default;
};
struct BlockMsg {
  Cid cid;
  Bytes data;
  friend bool operator==(const BlockMsg&, const BlockMsg&) = default;
};

using Message = std::variant<WantHave, Have, DontHave, WantBlock, BlockMsg>;

std::uint8_t message_tag(const Message& m);
const Cid& message_cid(const Message& m);

/// Same envelope as the DHT RPCs: varint(length) || tag || fields.
Bytes encode(const Message& m);
Result<Message> decode(ByteView bytes);

}  // namespace ipfsim::bitswap
