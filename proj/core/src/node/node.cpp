// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/node/node.hpp"

#include "ipfsim/common/wire.hpp"

#include <deque>

namespace ipfsim::node {

namespace {

dht::DhtRole initial_role(RolePolicy policy) {
  return policy == RolePolicy::force_server ? dht::DhtRole::server : dht::DhtRole::client;
}

}  // namespace

class Node::DhtNet final : public dht::Network {
 public:
  explicit DhtNet(Node& node) : node_(node) {}

  VTime now() const override { return node_.endpoint_.now(); }

  void call(const dht::PeerInfo& to, dht::Message request,
            std::function<void(std::optional<dht::Message>)> on_reply) override {
    ++node_.counters_.dht_requests_sent;
    node_.endpoint_.request(to.id, dht::encode(request),
                            [on_reply = std::move(on_reply)](std::optional<Bytes> bytes) {
                              if (!bytes) return on_reply(std::nullopt);
                              auto m = dht::decode(*bytes);
                              if (!m || dht::is_request(m.value())) return on_reply(std::nullopt);
                              on_reply(std::move(m).value());
                            });
  }

  Duration send(const dht::PeerInfo& to, dht::Message message) override {
    ++node_.counters_.dht_messages_sent;
    return node_.endpoint_.send(to.id, dht::encode(message));
  }

  void dial(const dht::PeerInfo& to, std::function<void(bool)> done) override {
    node_.endpoint_.dial(to.id, std::move(done));
  }

  bool is_connected(const PeerId& peer) const override {
    return node_.endpoint_.is_connected(peer);
  }

 private:
  Node& node_;
};

class Node::BitswapNet final : public bitswap::Network {
 public:
  explicit BitswapNet(Node& node) : node_(node) {}

  VTime now() const override { return node_.endpoint_.now(); }

  void schedule(Duration delay, std::function<void()> fn) override {
    node_.endpoint_.schedule(delay, std::move(fn));
  }

  std::vector<PeerId> connected_peers() const override {
    return node_.endpoint_.connected_peers();
  }

  void call(const PeerId& to, bitswap::Message request,
            std::function<void(std::optional<bitswap::Message>)> on_reply) override {
    ++node_.counters_.bitswap_requests_sent;
    node_.endpoint_.request(to, bitswap::encode(request),
                            [on_reply = std::move(on_reply)](std::optional<Bytes> bytes) {
                              if (!bytes) return on_reply(std::nullopt);
                              auto m = bitswap::decode(*bytes);
                              if (!m) return on_reply(std::nullopt);
                              on_reply(std::move(m).value());
                            });
  }

  void disconnect(const PeerId& peer) override { node_.endpoint_.disconnect(peer); }

 private:
  Node& node_;
};

struct Node::Retrieval {
  Cid cid;
  std::function<void(RetrievalReport)> done;
  RetrievalReport report;
  VTime t0{};
  VTime discovered{};
  VTime dialed{};
  VTime negotiated{};
  std::uint64_t rpc_baseline = 0;
  std::deque<Cid> pending;  // blocks still to fetch, depth first
  PeerId from;
  bool finished = false;
};

Node::Node(dht::PeerInfo self, NodeConfig config, Endpoint& endpoint, std::uint64_t seed)
    : config_(std::move(config)),
      endpoint_(endpoint),
      dht_(std::move(self), initial_role(config_.role_policy), config_.dht, seed),
      book_(config_.address_book_capacity),
      dht_net_(std::make_unique<DhtNet>(*this)),
      bitswap_net_(std::make_unique<BitswapNet>(*this)),
      bitswap_(std::make_unique<bitswap::Engine>(*bitswap_net_, store_, config_.bitswap)),
      republish_(config_.dht.republish_interval) {}

Node::~Node() = default;

dht::Network& Node::dht_network() { return *dht_net_; }

dag::DagBuild Node::import(ByteView content, std::size_t* added) {
  auto build = dag::import_content(content, config_.chunk_size, config_.fanout);
  std::size_t fresh = 0;
  for (const auto& block : build.blocks) {
    auto put = store_.put(block);
    if (put && put.value() == dag::PutOutcome::stored_new) {
      ++fresh;
      note_cached(block);
    }
  }
  if (added != nullptr) *added = fresh;
  return build;
}

void Node::publish(ByteView content, std::function<void(Result<PublicationReport>)> done) {
  if (dht_.role() != dht::DhtRole::server) {
    done(Errc::cannot_provide);
    return;
  }
  PublicationReport report;
  auto build = import(content, &report.blocks_added);
  report.root = build.root;
  report.blocks_total = build.blocks.size();
  pin(build.root);

  if (config_.provide_granularity == ProvideGranularity::all_blocks) {
    for (const auto& block : build.blocks) {
      if (block.cid == build.root) continue;
      ++report.extra_provides;
      dht::provide(*dht_net_, dht_, mf::dht_key(block.cid), [](Result<dht::ProvideReport>) {});
    }
  }

  provide(build.root, [report, done = std::move(done)](Result<dht::ProvideReport> r) mutable {
    if (!r) return done(r.error());
    report.provide = std::move(r).value();
    done(std::move(report));
  });
}

void Node::provide(const Cid& cid, std::function<void(Result<dht::ProvideReport>)> done) {
  dht::provide(*dht_net_, dht_, mf::dht_key(cid),
               [this, cid, done = std::move(done)](Result<dht::ProvideReport> r) {
                 if (r && pins_.contains(cid)) republish_.provided(cid, r.value().started);
                 if (done) done(std::move(r));
               });
}

void Node::retrieve(const Cid& cid, std::function<void(RetrievalReport)> done) {
  auto r = std::make_shared<Retrieval>();
  r->cid = cid;
  r->done = std::move(done);
  r->t0 = endpoint_.now();
  r->report.cid = cid;
  r->report.started = r->t0;
  r->rpc_baseline = counters_.dht_requests_sent;

  if (dag::reassemble(store_, cid)) {
    r->discovered = r->dialed = r->negotiated = r->t0;
    r->from = id();
    complete(r, {});
    return;
  }

  bitswap_->want(cid, [this, r](bitswap::WantOutcome w) {
    if (w.kind == bitswap::WantOutcome::Kind::block) {
      r->report.via_bitswap = true;
      r->report.bitswap_wait = w.have_at - r->t0;
      r->discovered = r->dialed = r->negotiated = w.have_at;
      r->report.provider = *w.holder;
      fetch_dag(r, *w.holder);
      return;
    }
    r->report.fallback = true;
    r->report.bitswap_wait = w.resolved_at - r->t0;
    discover_via_dht(r);
  });
}

void Node::discover_via_dht(std::shared_ptr<Retrieval> r) {
  r->report.provider_walk_started = endpoint_.now();
  dht::iterative_find_providers(*dht_net_, dht_, r->cid, [this, r](Result<dht::LookupResult> res) {
    r->report.walks = 1;
    if (!res) {
      r->discovered = r->dialed = r->negotiated = endpoint_.now();
      complete(r, Errc::not_found);
      return;
    }
    r->report.provider_walk = res.value().duration();
    std::vector<dht::PeerInfo> providers;
    for (auto& p : res.value().providers)
      if (p.id != id()) providers.push_back(std::move(p));
    if (providers.empty()) {
      r->discovered = r->dialed = r->negotiated = endpoint_.now();
      complete(r, Errc::not_found);
      return;
    }
    resolve_provider(r, std::move(providers));
  });
}

void Node::resolve_provider(std::shared_ptr<Retrieval> r, std::vector<dht::PeerInfo> providers) {
  auto& first = providers.front();
  if (endpoint_.is_connected(first.id) || !first.addrs.empty()) {
    r->report.addrs_from_record = !first.addrs.empty();
    r->discovered = endpoint_.now();
    dial_providers(r, std::move(providers), 0);
    return;
  }
  if (const auto* entry = book_.find(first.id); entry != nullptr && !entry->addrs.empty()) {
    r->report.addrs_from_book = true;
    first.addrs = entry->addrs;
    r->discovered = endpoint_.now();
    dial_providers(r, std::move(providers), 0);
    return;
  }
  // Peer discovery: a second walk for the provider's addresses.
  const PeerId subject = first.id;
  dht::iterative_find_peer(
      *dht_net_, dht_, subject,
      [this, r, providers = std::move(providers)](Result<dht::LookupResult> res) mutable {
        r->report.walks = 2;
        r->discovered = endpoint_.now();
        std::size_t start = 0;
        if (res && res.value().peer) {
          r->report.peer_walk = res.value().duration();
          providers.front().addrs = res.value().peer->addrs;
        } else {
          if (res) r->report.peer_walk = res.value().duration();
          start = 1;
        }
        dial_providers(r, std::move(providers), start);
      });
}

void Node::dial_providers(std::shared_ptr<Retrieval> r, std::vector<dht::PeerInfo> candidates,
                          std::size_t index) {
  // Later providers are only tried when their addresses are already known.
  while (index < candidates.size() && index > 0 && !endpoint_.is_connected(candidates[index].id) &&
         candidates[index].addrs.empty() && book_.find(candidates[index].id) == nullptr)
    ++index;
  if (index >= candidates.size()) {
    r->dialed = r->negotiated = endpoint_.now();
    complete(r, Errc::all_dials_failed);
    return;
  }
  const PeerId peer = candidates[index].id;
  const bool fresh = !endpoint_.is_connected(peer);
  ++r->report.provider_dials;
  endpoint_.dial(peer, [this, r, peer, fresh, candidates = std::move(candidates),
                        index](bool ok) mutable {
    if (!ok) {
      dial_providers(r, std::move(candidates), index + 1);
      return;
    }
    r->dialed = endpoint_.now();
    r->report.provider = peer;
    book_.touch(peer, candidates[index].addrs, endpoint_.now());
    const Duration cost = fresh ? endpoint_.negotiate_cost(peer) : Duration::zero();
    endpoint_.schedule(cost, [this, r, peer] {
      r->negotiated = endpoint_.now();
      fetch_dag(r, peer);
    });
  });
}

void Node::fetch_dag(std::shared_ptr<Retrieval> r, const PeerId& from) {
  r->from = from;
  r->pending.clear();
  r->pending.push_back(r->cid);
  fetch_next(r);
}

void Node::fetch_next(std::shared_ptr<Retrieval> r) {
  while (!r->pending.empty()) {
    const Cid next = r->pending.front();
    auto local = store_.get(next);
    if (!local) break;
    r->pending.pop_front();
    auto links = dag::block_links(*local);
    if (!links) {
      complete(r, links.error());
      return;
    }
    r->pending.insert(r->pending.begin(), links.value().begin(), links.value().end());
  }
  if (r->pending.empty()) {
    complete(r, {});
    return;
  }
  const Cid next = r->pending.front();
  bitswap_->fetch(r->from, next, [this, r](Result<dag::Block> block) {
    if (!block) {
      complete(r, block.error());
      return;
    }
    note_cached(block.value());
    fetch_next(r);
  });
}

void Node::complete(std::shared_ptr<Retrieval> r, std::error_code ec) {
  if (r->finished) return;
  r->finished = true;
  const VTime end = endpoint_.now();
  auto& rep = r->report;
  rep.phases.discover = r->discovered - r->t0;
  rep.phases.dial = r->dialed - r->discovered;
  rep.phases.negotiate = r->negotiated - r->dialed;
  rep.phases.fetch = end - r->negotiated;
  rep.dht_rpcs = counters_.dht_requests_sent - r->rpc_baseline;
  rep.error = ec;

  if (!ec) {
    auto content = dag::reassemble(store_, r->cid);
    if (!content) {
      rep.error = content.error();
    } else {
      rep.success = true;
      rep.bytes = content.value().size();
      rep.content = std::move(content).value();
    }
  }
  if (rep.success) {
    rep.blocks = 0;
    std::deque<Cid> walk{r->cid};
    while (!walk.empty()) {
      auto block = store_.get(walk.front());
      walk.pop_front();
      if (!block) continue;
      ++rep.blocks;
      if (auto links = dag::block_links(*block)) walk.insert(walk.end(), links.value().begin(), links.value().end());
    }
  }

  const bool fetched_remotely = rep.success && rep.provider.has_value();
  if (fetched_remotely && config_.disconnect_after_retrieve) endpoint_.disconnect(*rep.provider);
  if (fetched_remotely && config_.provide_after_retrieve && dht_.role() == dht::DhtRole::server)
    provide(r->cid, {});

  auto done = std::move(r->done);
  done(std::move(rep));
}

std::vector<Cid> Node::republish_tick(VTime now) {
  if (!config_.republish || dht_.role() != dht::DhtRole::server) return {};
  auto due = republish_.due(now);
  for (const auto& cid : due) {
    republish_.provided(cid, now);
    provide(cid, {});
  }
  return due;
}

std::set<Bytes> Node::protected_blocks() const {
  std::set<Bytes> keep;
  std::deque<Cid> walk(pins_.begin(), pins_.end());
  while (!walk.empty()) {
    const Cid cid = walk.front();
    walk.pop_front();
    if (!keep.insert(cid.to_bytes()).second) continue;
    auto block = store_.get(cid);
    if (!block) continue;
    if (auto links = dag::block_links(*block)) walk.insert(walk.end(), links.value().begin(), links.value().end());
  }
  return keep;
}

std::vector<Cid> Node::gc_tick(VTime now) {
  std::vector<Cid> evicted;
  const auto keep = protected_blocks();
  for (auto it = cached_.begin(); it != cached_.end();) {
    if (keep.contains(it->first.to_bytes())) {
      ++it;
      continue;
    }
    if (now - it->second >= config_.cache_ttl) {
      store_.remove(it->first);
      evicted.push_back(it->first);
      it = cached_.erase(it);
    } else {
      ++it;
    }
  }
  return evicted;
}

void Node::pin(const Cid& root) { pins_.insert(root); }

void Node::unpin(const Cid& root) {
  pins_.erase(root);
  republish_.forget(root);
}

void Node::note_cached(const dag::Block& block) { cached_[block.cid] = endpoint_.now(); }

std::optional<VTime> Node::cached_at(const Cid& cid) const {
  auto it = cached_.find(cid);
  if (it == cached_.end()) return std::nullopt;
  return it->second;
}

void Node::announce_peer_record(std::function<void(bool)> done) {
  const dht::PeerInfo self = info();
  dht::iterative_find_peers(*dht_net_, dht_, dht_.self_key(),
                            [this, self, done = std::move(done)](Result<dht::LookupResult> r) {
                              if (!r) {
                                if (done) done(false);
                                return;
                              }
                              for (const auto& p : r.value().closest)
                                dht_net_->send(p, dht::PutPeerRecord{dht_.origin(), self});
                              if (done) done(true);
                            });
}

void Node::run_autonat(std::function<void(dht::AutonatOutcome)> done) {
  std::vector<dht::PeerInfo> peers;
  for (auto& p : endpoint_.connected_peers()) peers.push_back(dht::PeerInfo{std::move(p), {}});
  dht::autonat_probe(*dht_net_, dht_.origin(), peers,
                     [this, done = std::move(done)](dht::AutonatOutcome outcome) {
                       if (config_.role_policy == RolePolicy::automatic) set_role(outcome.role);
                       if (done) done(outcome);
                     });
}

void Node::handle_inbound(const PeerId& from, ByteView payload, Responder respond) {
  ++counters_.inbound_requests;
  auto reply = [&respond](std::optional<Bytes> bytes) {
    if (respond) respond(std::move(bytes));
  };
  auto frame = wire::unframe(payload);
  if (!frame) {
    ++counters_.protocol_errors;
    reply(std::nullopt);
    return;
  }
  const std::uint8_t t = frame.value().tag;

  if (bitswap::is_bitswap_tag(t)) {
    auto m = bitswap::decode(payload);
    if (!m) {
      ++counters_.protocol_errors;
      reply(std::nullopt);
      return;
    }
    auto answer = bitswap_->serve(m.value());
    reply(answer ? std::optional<Bytes>(bitswap::encode(*answer)) : std::nullopt);
    return;
  }

  if (!dht::is_dht_tag(t)) {
    ++counters_.protocol_errors;
    reply(std::nullopt);
    return;
  }

  if (t == dht::tag::kDialBack) {
    endpoint_.dial_back(from, [respond = std::move(respond)](bool reachable) {
      if (respond) respond(dht::encode(dht::DialBackReply{reachable}));
    });
    return;
  }

  // Clients do not serve the DHT protocol.
  if (dht_.role() != dht::DhtRole::server) {
    reply(std::nullopt);
    return;
  }

  auto m = dht::decode(payload);
  if (!m || !dht::is_request(m.value())) {
    ++counters_.protocol_errors;
    reply(std::nullopt);
    return;
  }
  if (const auto* origin = dht::message_origin(m.value()); origin && !origin->addrs.empty())
    book_.touch(from, origin->addrs, endpoint_.now());
  auto answer = dht_.handle_rpc(from, m.value(), endpoint_.now(),
                                [this](const PeerId& p) { return endpoint_.probe_alive(p); });
  reply(answer ? std::optional<Bytes>(dht::encode(*answer)) : std::nullopt);
}

}  // namespace ipfsim::node
