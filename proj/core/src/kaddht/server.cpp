// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/kaddht/server.hpp"

namespace ipfsim::dht {

DhtServer::DhtServer(PeerInfo self, DhtRole role, DhtConfig config, std::uint64_t seed)
    : self_(std::move(self)),
      role_(role),
      config_(config),
      table_(mf::dht_key(self_.id), config.k),
      rng_(seed) {}

std::vector<PeerInfo> DhtServer::closest_peers(const DhtKey& target, const PeerId& exclude) const {
  // One extra so the requester can be dropped without shrinking the reply.
  auto entries = table_.closest(target, config_.k + 1);
  std::vector<PeerInfo> out;
  out.reserve(config_.k);
  for (auto& e : entries) {
    if (e.peer.id == exclude) continue;
    if (out.size() == config_.k) break;
    out.push_back(std::move(e.peer));
  }
  return out;
}

std::optional<Message> DhtServer::handle_rpc(const PeerId& from, const Message& request, VTime now,
                                             const LivenessProbe& probe) {
  if (const Origin* origin = message_origin(request); origin && origin->server) {
    (void)table_.insert(PeerInfo{from, origin->addrs}, DhtRole::server, now, probe);
  }

  if (const auto* m = std::get_if<FindNode>(&request)) {
    return PeersReply{closest_peers(m->target, from)};
  }
  if (const auto* m = std::get_if<GetProviders>(&request)) {
    ProvidersReply reply;
    for (const auto& rec : providers_.get(m->key, now)) {
      PeerInfo p{rec.provider, {}};
      if (rec.provider == self_.id) {
        p.addrs = self_.addrs;
      } else if (auto pr = peer_records_.get(rec.provider)) {
        p.addrs = pr->addresses;
      }
      reply.providers.push_back(std::move(p));
    }
    if (reply.providers.empty()) reply.closer = closest_peers(m->key, from);
    return reply;
  }
  if (const auto* m = std::get_if<AddProvider>(&request)) {
    // Only the provider itself may announce a record for itself.
    if (m->provider.id != from) return std::nullopt;
    providers_.add(m->key, m->provider.id, now, config_.provider_ttl);
    if (!m->provider.addrs.empty() && config_.addrs_with_records_probability > 0.0) {
      std::bernoulli_distribution keep(config_.addrs_with_records_probability);
      if (keep(rng_)) peer_records_.put(PeerRecord{m->provider.id, m->provider.addrs, now});
    }
    return std::nullopt;
  }
  if (const auto* m = std::get_if<FindPeer>(&request)) {
    FindPeerReply reply;
    if (m->peer == self_.id) {
      reply.record = self_;
    } else if (auto pr = peer_records_.get(m->peer)) {
      reply.record = PeerInfo{pr->subject, pr->addresses};
    } else {
      reply.closer = closest_peers(mf::dht_key(m->peer), from);
    }
    return reply;
  }
  if (const auto* m = std::get_if<PutPeerRecord>(&request)) {
    if (m->record.id == from && !m->record.addrs.empty())
      peer_records_.put(PeerRecord{m->record.id, m->record.addrs, now});
    return std::nullopt;
  }
  if (std::holds_alternative<DumpBuckets>(request)) {
    PeersReply reply;
    for (auto& e : table_.entries()) reply.closer.push_back(std::move(e.peer));
    return reply;
  }
  // Replies and DIAL_BACK are not answered here.
  return std::nullopt;
}

Result<std::optional<Bytes>> DhtServer::handle_rpc_bytes(const PeerId& from, ByteView request,
                                                         VTime now, const LivenessProbe& probe) {
  auto msg = decode(request);
  if (!msg) return msg.error();
  if (!is_request(msg.value())) return Errc::malformed_message;
  auto reply = handle_rpc(from, msg.value(), now, probe);
  if (!reply) return std::optional<Bytes>{};
  return std::optional<Bytes>{encode(*reply)};
}

}  // namespace ipfsim::dht
