// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/simnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ipfsim::sim {

namespace {

std::vector<mf::Multiaddr> host_addrs(std::size_t index, const HostSpec& spec) {
  const std::string ip = "/ip4/10." + std::to_string((index >> 16) & 0xff) + "." +
                         std::to_string((index >> 8) & 0xff) + "." + std::to_string(index & 0xff);
  std::vector<mf::Multiaddr> out;
  for (std::size_t k = 0; k < std::max<std::size_t>(spec.addresses, 1); ++k) {
    const std::string port = std::to_string(4001 + k);
    std::string text;
    switch (spec.transport) {
      case TransportKind::tcp: text = ip + "/tcp/" + port; break;
      case TransportKind::quic: text = ip + "/udp/" + port + "/quic"; break;
      case TransportKind::ws: text = ip + "/tcp/" + port + "/ws"; break;
    }
    out.push_back(mf::Multiaddr::parse(text).value());
  }
  return out;
}

}  // namespace

// Host --------------------------------------------------------------------

Host::Host(SimNetwork& net, std::size_t index, HostSpec spec, PeerId id)
    : net_(net), index_(index), spec_(spec), id_(std::move(id)), addrs_(host_addrs(index, spec)) {}

VTime Host::now() const { return net_.now(); }

void Host::schedule(Duration delay, std::function<void()> fn) {
  net_.clock_.schedule(delay, std::move(fn));
}

bool Host::is_connected(const PeerId& peer) const {
  auto j = net_.index_of(peer);
  return j && connections_.contains(*j);
}

std::vector<PeerId> Host::connected_peers() const {
  std::vector<PeerId> out;
  out.reserve(connections_.size());
  for (auto j : connections_) out.push_back(net_.host(j).id());
  return out;
}

void Host::dial(const PeerId& peer, std::function<void(bool)> done) {
  auto j = net_.index_of(peer);
  if (!j || *j == index_ || !spec_.online) {
    schedule(Duration::zero(), [done = std::move(done)] { done(false); });
    return;
  }
  if (connections_.contains(*j)) {
    schedule(Duration::zero(), [done = std::move(done)] { done(true); });
    return;
  }
  net_.start_dial(index_, *j, std::move(done));
}

void Host::dial_back(const PeerId& peer, std::function<void(bool)> done) {
  auto j = net_.index_of(peer);
  if (!j || *j == index_) {
    schedule(Duration::zero(), [done = std::move(done)] { done(false); });
    return;
  }
  const Host& target = net_.host(*j);
  if (target.online() && target.spec().dialable) {
    schedule(net_.handshake_time(index_, *j), [done = std::move(done)] { done(true); });
  } else {
    schedule(net_.dial_failure_time(*j), [done = std::move(done)] { done(false); });
  }
}

void Host::request(const PeerId& peer, Bytes payload,
                   std::function<void(std::optional<Bytes>)> on_reply) {
  auto j = net_.index_of(peer);
  if (!j) {
    schedule(Duration::zero(), [on_reply = std::move(on_reply)] { on_reply(std::nullopt); });
    return;
  }
  const std::size_t to = *j;
  dial(peer, [this, to, payload = std::move(payload),
              on_reply = std::move(on_reply)](bool ok) mutable {
    if (!ok) return on_reply(std::nullopt);
    net_.transmit(index_, to, std::move(payload), std::move(on_reply));
  });
}

Duration Host::send(const PeerId& peer, Bytes payload) {
  auto j = net_.index_of(peer);
  if (!j || !connections_.contains(*j)) return Duration::zero();
  const std::size_t to = *j;
  const std::size_t size = payload.size();
  const Duration issue = net_.transfer_time(size);
  traffic_.sent += size;
  net_.in_flight_bytes_ += size;
  const std::size_t from = index_;
  net_.clock_.schedule(net_.one_way(from, to) + issue, [net = &net_, from, to, size,
                                                        payload = std::move(payload)] {
    net->in_flight_bytes_ -= size;
    Host& dst = net->host(to);
    if (!dst.online() || !net->connected(from, to)) {
      net->host(from).traffic_.dropped += size;
      return;
    }
    dst.traffic_.received += size;
    dst.node().handle_inbound(net->host(from).id(), payload, {});
  });
  return issue;
}

void Host::disconnect(const PeerId& peer) {
  if (auto j = net_.index_of(peer)) net_.disconnect(index_, *j);
}

Duration Host::negotiate_cost(const PeerId& peer) const {
  auto j = net_.index_of(peer);
  if (!j) return Duration::zero();
  return net_.config().negotiate_rtts * net_.rtt(index_, *j);
}

bool Host::probe_alive(const PeerId& peer) const {
  auto j = net_.index_of(peer);
  if (!j) return false;
  const Host& h = net_.host(*j);
  return h.online() && h.spec().dialable;
}

// SimNetwork --------------------------------------------------------------

SimNetwork::SimNetwork(RegionLatencyModel latency, NetConfig config, std::uint64_t seed)
    : latency_(std::move(latency)),
      config_(config),
      rng_(seed),
      key_rng_(seed ^ 0x9e3779b97f4a7c15ULL) {}

SimNetwork::~SimNetwork() = default;

std::size_t SimNetwork::add_host(HostSpec spec, const node::NodeConfig& node_config) {
  Bytes key(32);
  for (auto& b : key) b = static_cast<std::uint8_t>(key_rng_() & 0xff);
  PeerId id = PeerId::from_public_key(key).value();
  const std::size_t i = hosts_.size();
  auto host = std::make_unique<Host>(*this, i, spec, id);
  host->node_ = std::make_unique<node::Node>(dht::PeerInfo{id, host->addrs_}, node_config, *host,
                                             key_rng_());
  if (node_config.role_policy == node::RolePolicy::automatic) host->node_->set_role(spec.role);
  index_.emplace(id, i);
  hosts_.push_back(std::move(host));
  return i;
}

std::optional<std::size_t> SimNetwork::index_of(const PeerId& peer) const {
  auto it = index_.find(peer);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void SimNetwork::set_online(std::size_t i, bool online) {
  Host& h = host(i);
  h.spec_.online = online;
  if (online) return;
  for (auto j : h.connections_) host(j).connections_.erase(i);
  h.connections_.clear();
}

bool SimNetwork::connected(std::size_t a, std::size_t b) const {
  return host(a).connections_.contains(b);
}

void SimNetwork::disconnect(std::size_t a, std::size_t b) {
  host(a).connections_.erase(b);
  host(b).connections_.erase(a);
}

Duration SimNetwork::base_one_way(std::size_t a, std::size_t b) const {
  return latency_.base(host(a).spec().region, host(b).spec().region);
}

Duration SimNetwork::one_way(std::size_t a, std::size_t b) {
  return latency_.sample(host(a).spec().region, host(b).spec().region, rng_);
}

Duration SimNetwork::transfer_time(std::size_t bytes) const {
  const double seconds = static_cast<double>(bytes) * 8.0 / config_.bandwidth_bps;
  return Duration(static_cast<Duration::rep>(std::llround(seconds * 1e9)));
}

Duration SimNetwork::handshake_time(std::size_t a, std::size_t b) const {
  return TransportProfile::for_kind(host(b).spec().transport).handshake_rtts * rtt(a, b);
}

Duration SimNetwork::dial_failure_time(std::size_t target) const {
  const auto& spec = host(target).spec();
  return sim::dial_failure_time(TransportProfile::for_kind(spec.transport), spec.addresses);
}

TrafficCounters SimNetwork::totals() const {
  TrafficCounters t;
  for (const auto& h : hosts_) {
    t.sent += h->traffic_.sent;
    t.received += h->traffic_.received;
    t.dropped += h->traffic_.dropped;
  }
  return t;
}

void SimNetwork::start_dial(std::size_t from, std::size_t to, std::function<void(bool)> done) {
  auto& waiting = host(from).pending_dials_[to];
  waiting.push_back(std::move(done));
  if (waiting.size() > 1) return;  // joins the dial already in progress
  ++dials_started_;
  const Host& target = host(to);
  if (target.online() && target.spec().dialable) {
    clock_.schedule(handshake_time(from, to), [this, from, to] {
      finish_dial(from, to, host(to).online() && host(from).online());
    });
  } else {
    clock_.schedule(dial_failure_time(to), [this, from, to] { finish_dial(from, to, false); });
  }
}

void SimNetwork::finish_dial(std::size_t from, std::size_t to, bool ok) {
  if (ok) {
    host(from).connections_.insert(to);
    host(to).connections_.insert(from);
  }
  auto it = host(from).pending_dials_.find(to);
  if (it == host(from).pending_dials_.end()) return;
  auto waiting = std::move(it->second);
  host(from).pending_dials_.erase(it);
  for (auto& cb : waiting) cb(ok);
}

void SimNetwork::transmit(std::size_t from, std::size_t to, Bytes payload,
                          std::function<void(std::optional<Bytes>)> on_reply) {
  if (!connected(from, to)) {
    on_reply(std::nullopt);
    return;
  }
  const std::size_t size = payload.size();
  host(from).traffic_.sent += size;
  in_flight_bytes_ += size;
  clock_.schedule(one_way(from, to) + transfer_time(size), [this, from, to, size,
                                                           payload = std::move(payload),
                                                           on_reply = std::move(on_reply)]() mutable {
    in_flight_bytes_ -= size;
    Host& dst = host(to);
    if (!dst.online() || !connected(from, to)) {
      // The requester learns about the reset one trip later.
      host(from).traffic_.dropped += size;
      clock_.schedule(base_one_way(from, to), [on_reply = std::move(on_reply)] { on_reply(std::nullopt); });
      return;
    }
    dst.traffic_.received += size;
    auto answered = std::make_shared<bool>(false);
    dst.node().handle_inbound(
        host(from).id(), payload,
        [this, from, to, answered, on_reply = std::move(on_reply)](std::optional<Bytes> reply) mutable {
          if (*answered) return;
          *answered = true;
          deliver_reply(to, from, std::move(reply), std::move(on_reply));
        });
  });
}

void SimNetwork::deliver_reply(std::size_t from, std::size_t to, std::optional<Bytes> reply,
                               std::function<void(std::optional<Bytes>)> on_reply) {
  if (!reply) {
    clock_.schedule(base_one_way(from, to), [on_reply = std::move(on_reply)] { on_reply(std::nullopt); });
    return;
  }
  const std::size_t size = reply->size();
  host(from).traffic_.sent += size;
  in_flight_bytes_ += size;
  clock_.schedule(one_way(from, to) + transfer_time(size), [this, from, to, size,
                                                           reply = std::move(reply),
                                                           on_reply = std::move(on_reply)]() mutable {
    in_flight_bytes_ -= size;
    Host& dst = host(to);
    if (!dst.online() || !connected(from, to)) {
      host(from).traffic_.dropped += size;
      on_reply(std::nullopt);
      return;
    }
    dst.traffic_.received += size;
    on_reply(std::move(reply));
  });
}

void build_converged(SimNetwork& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> servers;
  std::vector<mf::DhtKey> keys(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    keys[i] = mf::dht_key(net.host(i).id());
    if (net.host(i).spec().role == dht::DhtRole::server) servers.push_back(i);
  }
  const VTime now = net.now();
  for (std::size_t h = 0; h < net.size(); ++h) {
    auto order = servers;
    std::shuffle(order.begin(), order.end(), rng);
    auto& table = net.host(h).node().dht().table();
    for (auto s : order) {
      if (s == h) continue;
      (void)table.insert(dht::PeerInfo{net.host(s).id(), net.host(s).addrs()}, keys[s],
                         dht::DhtRole::server, now, {});
    }
  }
  // Peer records sit at the k servers closest to each server's key.
  for (auto s : servers) {
    const auto k = net.host(s).node().config().dht.k;
    std::vector<std::pair<dht::Distance, std::size_t>> by_distance;
    by_distance.reserve(servers.size());
    for (auto t : servers)
      if (t != s) by_distance.emplace_back(keys[s] ^ keys[t], t);
    const auto n = std::min<std::size_t>(k, by_distance.size());
    std::partial_sort(by_distance.begin(), by_distance.begin() + static_cast<std::ptrdiff_t>(n),
                      by_distance.end());
    for (std::size_t i = 0; i < n; ++i)
      net.host(by_distance[i].second)
          .node()
          .dht()
          .peer_records()
          .put(dht::PeerRecord{net.host(s).id(), net.host(s).addrs(), now});
  }
}

}  // namespace ipfsim::sim
