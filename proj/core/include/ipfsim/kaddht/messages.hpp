// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"
#include "ipfsim/common/error.hpp"
#include "ipfsim/kaddht/distance.hpp"
#include "ipfsim/kaddht/peer_info.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace ipfsim::dht {

/// Tag bytes of the DHT RPC envelope. Bitswap uses 0x20 and up.
namespace tag {
inline constexpr std::uint8_t kFindNode = 0x01;
inline constexpr std::uint8_t kGetProviders = 0x02;
inline constexpr std::uint8_t kAddProvider = 0x03;
inline constexpr std::uint8_t kFindPeer = 0x04;
inline constexpr std::uint8_t kPutPeerRecord = 0x05;
inline constexpr std::uint8_t kDumpBuckets = 0x06;
inline constexpr std::uint8_t kDialBack = 0x07;
inline constexpr std::uint8_t kPeersReply = 0x11;
inline constexpr std::uint8_t kProvidersReply = 0x12;
inline constexpr std::uint8_t kFindPeerReply = 0x13;
inline constexpr std::uint8_t kDialBackReply = 0x17;
}  // namespace tag

inline bool is_dht_tag(std::uint8_t t) { return t >= 0x01 && t < 0x20; }

/// What a requester says about itself. Only server-role senders are
/// offered to the responder's routing table.
struct Origin {
  bool server = false;
  std::vector<Multiaddr> addrs;

  friend bool operator==(const Origin&, const Origin&) = default;
};

struct FindNode {
  Origin origin;
  DhtKey target;
  friend bool operator==(const FindNode&, const FindNode&) = default;
};

struct GetProviders {
  Origin origin;
  DhtKey key;
  friend bool operator==(const GetProviders&, const GetProviders&) = default;
};

struct AddProvider {
  Origin origin;
  DhtKey key;
  PeerInfo provider;
  friend bool operator==(const AddProvider&, const AddProvider&) = default;
};

struct FindPeer {
  Origin origin;
  PeerId peer;
  friend bool operator==(const FindPeer&, const FindPeer&) = default;
};

struct PutPeerRecord {
  Origin origin;
  PeerInfo record;
  friend bool operator==(const PutPeerRecord&, const PutPeerRecord&) = default;
};

/// Crawler request: every routing-table entry of the responder.
struct DumpBuckets {
  Origin origin;
  friend bool operator==(const DumpBuckets&, const DumpBuckets&) = default;
};

/// Autonat: ask the responder to open a fresh connection back to us.
struct DialBack {
  Origin origin;
  friend bool operator==(const DialBack&, const DialBack&) = default;
};

struct PeersReply {
  std::vector<PeerInfo> closer;
  friend bool operator==(const PeersReply&, const PeersReply&) = default;
};

struct ProvidersReply {
  std::vector<PeerInfo> providers;  // addrs empty when the responder has none
  std::vector<PeerInfo> closer;
  friend bool operator==(const ProvidersReply&, const ProvidersReply&) = default;
};

struct FindPeerReply {
  std::optional<PeerInfo> record;
  std::vector<PeerInfo> closer;
  friend bool operator==(const FindPeerReply&, const FindPeerReply&) = default;
};

struct DialBackReply {
  bool reachable = false;
  friend bool operator==(const DialBackReply&, const DialBackReply&) = default;
};

using Message = std::variant<FindNode, GetProviders, AddProvider, FindPeer, PutPeerRecord,
                             DumpBuckets, DialBack, PeersReply, ProvidersReply, FindPeerReply,
                             DialBackReply>;

std::uint8_t message_tag(const Message& m);
bool is_request(const Message& m);
const Origin* message_origin(const Message& m);
const char* message_name(const Message& m);

/// varint(length) || tag || fields. Peer IDs and multiaddrs are written as
/// length-prefixed binary multihash and text respectively.
Bytes encode(const Message& m);
Result<Message> decode(ByteView bytes);

}  // namespace ipfsim::dht
