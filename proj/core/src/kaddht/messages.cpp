// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/kaddht/messages.hpp"

#include "ipfsim/common/wire.hpp"

namespace ipfsim::dht {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void put_key(wire::Writer& w, const DhtKey& k) { w.raw(k.bits); }

void put_addrs(wire::Writer& w, const std::vector<Multiaddr>& addrs) {
  w.varint(addrs.size());
  for (const auto& a : addrs) w.string(a.str());
}

void put_peer(wire::Writer& w, const PeerInfo& p) {
  w.bytes(p.id.to_bytes());
  put_addrs(w, p.addrs);
}

void put_peers(wire::Writer& w, const std::vector<PeerInfo>& peers) {
  w.varint(peers.size());
  for (const auto& p : peers) put_peer(w, p);
}

void put_origin(wire::Writer& w, const Origin& o) {
  w.boolean(o.server);
  put_addrs(w, o.addrs);
}

// Readers return false on any malformed field.
bool get_key(wire::Reader& r, DhtKey& k) {
  for (auto& b : k.bits) {
    auto v = r.u8();
    if (!v) return false;
    b = v.value();
  }
  return true;
}

bool get_count(wire::Reader& r, std::uint64_t& n) {
  auto v = r.varint();
  if (!v || v.value() > r.remaining()) return false;
  n = v.value();
  return true;
}

bool get_addrs(wire::Reader& r, std::vector<Multiaddr>& out) {
  std::uint64_t n = 0;
  if (!get_count(r, n)) return false;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto s = r.string();
    if (!s) return false;
    auto a = Multiaddr::parse(s.value());
    if (!a) return false;
    out.push_back(std::move(a).value());
  }
  return true;
}

bool get_peer_id(wire::Reader& r, PeerId& out) {
  auto raw = r.bytes_view();
  if (!raw) return false;
  auto id = PeerId::from_bytes(raw.value());
  if (!id) return false;
  out = std::move(id).value();
  return true;
}

bool get_peer(wire::Reader& r, PeerInfo& p) { return get_peer_id(r, p.id) && get_addrs(r, p.addrs); }

bool get_peers(wire::Reader& r, std::vector<PeerInfo>& out) {
  std::uint64_t n = 0;
  if (!get_count(r, n)) return false;
  out.resize(n);
  for (auto& p : out)
    if (!get_peer(r, p)) return false;
  return true;
}

bool get_origin(wire::Reader& r, Origin& o) {
  auto server = r.boolean();
  if (!server) return false;
  o.server = server.value();
  return get_addrs(r, o.addrs);
}

}  // namespace

std::uint8_t message_tag(const Message& m) {
  return std::visit(overloaded{
                        [](const FindNode&) { return tag::kFindNode; },
                        [](const GetProviders&) { return tag::kGetProviders; },
                        [](const AddProvider&) { return tag::kAddProvider; },
                        [](const FindPeer&) { return tag::kFindPeer; },
                        [](const PutPeerRecord&) { return tag::kPutPeerRecord; },
                        [](const DumpBuckets&) { return tag::kDumpBuckets; },
                        [](const DialBack&) { return tag::kDialBack; },
                        [](const PeersReply&) { return tag::kPeersReply; },
                        [](const ProvidersReply&) { return tag::kProvidersReply; },
                        [](const FindPeerReply&) { return tag::kFindPeerReply; },
                        [](const DialBackReply&) { return tag::kDialBackReply; },
                    },
                    m);
}

bool is_request(const Message& m) { return message_tag(m) < 0x10; }

const Origin* message_origin(const Message& m) {
  return std::visit(
      [](const auto& v) -> const Origin* {
        if constexpr (requires { v.origin; })
          return &v.origin;
        else
          return nullptr;
      },
      m);
}

const char* message_name(const Message& m) {
  switch (message_tag(m)) {
    case tag::kFindNode: return "FIND_NODE";
    case tag::kGetProviders: return "GET_PROVIDERS";
    case tag::kAddProvider: return "ADD_PROVIDER";
    case tag::kFindPeer: return "FIND_PEER";
    case tag::kPutPeerRecord: return "PUT_PEER_RECORD";
    case tag::kDumpBuckets: return "DUMP_BUCKETS";
    case tag::kDialBack: return "DIAL_BACK";
    case tag::kPeersReply: return "PEERS";
    case tag::kProvidersReply: return "PROVIDERS";
    case tag::kFindPeerReply: return "PEER";
    case tag::kDialBackReply: return "DIAL_BACK_RESULT";
  }
  return "?";
}

Bytes encode(const Message& m) {
  wire::Writer w;
  std::visit(overloaded{
                 [&](const FindNode& v) { put_origin(w, v.origin); put_key(w, v.target); },
                 [&](const GetProviders& v) { put_origin(w, v.origin); put_key(w, v.key); },
                 [&](const AddProvider& v) {
                   put_origin(w, v.origin);
                   put_key(w, v.key);
                   put_peer(w, v.provider);
                 },
                 [&](const FindPeer& v) { put_origin(w, v.origin); w.bytes(v.peer.to_bytes()); },
                 [&](const PutPeerRecord& v) { put_origin(w, v.origin); put_peer(w, v.record); },
                 [&](const DumpBuckets& v) { put_origin(w, v.origin); },
                 [&](const DialBack& v) { put_origin(w, v.origin); },
                 [&](const PeersReply& v) { put_peers(w, v.closer); },
                 [&](const ProvidersReply& v) {
                   put_peers(w, v.providers);
                   put_peers(w, v.closer);
                 },
                 [&](const FindPeerReply& v) {
                   w.boolean(v.record.has_value());
                   if (v.record) put_peer(w, *v.record);
                   put_peers(w, v.closer);
                 },
                 [&](const DialBackReply& v) { w.boolean(v.reachable); },
             },
             m);
  return wire::frame(message_tag(m), w.data());
}

Result<Message> decode(ByteView bytes) {
  auto frame = wire::unframe(bytes);
  if (!frame) return Errc::malformed_message;
  wire::Reader r(frame.value().body);
  bool ok = false;
  Message out;
  switch (frame.value().tag) {
    case tag::kFindNode: {
      FindNode v;
      ok = get_origin(r, v.origin) && get_key(r, v.target);
      out = std::move(v);
      break;
    }
    case tag::kGetProviders: {
      GetProviders v;
      ok = get_origin(r, v.origin) && get_key(r, v.key);
      out = std::move(v);
      break;
    }
    case tag::kAddProvider: {
      AddProvider v;
      ok = get_origin(r, v.origin) && get_key(r, v.key) && get_peer(r, v.provider);
      out = std::move(v);
      break;
    }
    case tag::kFindPeer: {
      FindPeer v;
      ok = get_origin(r, v.origin) && get_peer_id(r, v.peer);
      out = std::move(v);
      break;
    }
    case tag::kPutPeerRecord: {
      PutPeerRecord v;
      ok = get_origin(r, v.origin) && get_peer(r, v.record);
      out = std::move(v);
      break;
    }
    case tag::kDumpBuckets: {
      DumpBuckets v;
      ok = get_origin(r, v.origin);
      out = std::move(v);
      break;
    }
    case tag::kDialBack: {
      DialBack v;
      ok = get_origin(r, v.origin);
      out = std::move(v);
      break;
    }
    case tag::kPeersReply: {
      PeersReply v;
      ok = get_peers(r, v.closer);
      out = std::move(v);
      break;
    }
    case tag::kProvidersReply: {
      ProvidersReply v;
      ok = get_peers(r, v.providers) && get_peers(r, v.closer);
      out = std::move(v);
      break;
    }
    case tag::kFindPeerReply: {
      FindPeerReply v;
      auto has = r.boolean();
      ok = bool(has);
      if (ok && has.value()) {
        PeerInfo p;
        ok = get_peer(r, p);
        v.record = std::move(p);
      }
      ok = ok && get_peers(r, v.closer);
      out = std::move(v);
      break;
    }
    case tag::kDialBackReply: {
      auto b = r.boolean();
      ok = bool(b);
      if (ok) out = DialBackReply{b.value()};
      break;
    }
    default: return Errc::malformed_message;
  }
  if (!ok || !r.empty()) return Errc::malformed_message;
  return out;
}

}  // namespace ipfsim::dht
