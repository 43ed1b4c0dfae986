// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/bitswap/messages.hpp"

#include "ipfsim/common/wire.hpp"

namespace ipfsim::bitswap {

std::uint8_t message_tag(const Message& m) {
  static constexpr std::uint8_t kTags[] = {tag::kWantHave, tag::kHave, tag::kDontHave,
                                           tag::kWantBlock, tag::kBlock};
  return kTags[m.index()];
}

const Cid& message_cid(const Message& m) {
  return std::visit([](const auto& v) -> const Cid& { return v.cid; }, m);
}

Bytes encode(const Message& m) {
  wire::Writer w;
  w.bytes(message_cid(m).to_bytes());
  if (const auto* b = std::get_if<BlockMsg>(&m)) w.bytes(b->data);
  return wire::frame(message_tag(m), w.data());
}

Result<Message> decode(ByteView bytes) {
  auto frame = wire::unframe(bytes);
  if (!frame) return Errc::malformed_message;
  wire::Reader r(frame.value().body);
  auto raw = r.bytes_view();
  if (!raw) return Errc::malformed_message;
  auto cid = Cid::from_bytes(raw.value());
  if (!cid) return Errc::malformed_message;
  Message out;
  switch (frame.value().tag) {
    case tag::kWantHave: out = WantHave{std::move(cid).value()}; break;
    case tag::kHave: out = Have{std::move(cid).value()}; break;
    case tag::kDontHave: out = DontHave{std::move(cid).value()}; break;
    case tag::kWantBlock: out = WantBlock{std::move(cid).value()}; break;
    case tag::kBlock: {
      auto data = r.bytes();
      if (!data) return Errc::malformed_message;
      out = BlockMsg{std::move(cid).value(), std::move(data).value()};
      break;
    }
    default: return Errc::malformed_message;
  }
  if (!r.empty()) return Errc::malformed_message;
  return out;
}

}  // namespace ipfsim::bitswap
