// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/kaddht/lookup.hpp"

#include <map>
#include <memory>

namespace ipfsim::dht {
namespace {

enum class QueryState { unqueried, in_flight, queried, failed };

struct Candidate {
  PeerInfo peer;
  QueryState state = QueryState::unqueried;
  int round = 1;
};

class Walk : public std::enable_shared_from_this<Walk> {
 public:
  Walk(Network& net, const DhtServer& local, LookupKind kind, const DhtKey& target,
       std::optional<PeerId> subject, LookupCallback done)
      : net_(net),
        kind_(kind),
        target_(target),
        subject_(std::move(subject)),
        self_(local.self().id),
        origin_(local.origin()),
        k_(local.config().k),
        alpha_(local.config().alpha),
        done_cb_(std::move(done)) {
    result_.started = net_.now();
    for (auto& e : local.table().closest(target_, k_))
      candidates_.emplace(xor_distance(e.key, target_), Candidate{std::move(e.peer)});
  }

  void start() {
    if (candidates_.empty()) {
      finished_ = true;
      done_cb_(Errc::no_reachable_peers);
      return;
    }
    if (kind_ == LookupKind::find_peer) {
      // The subject's addresses are already in the local table.
      for (const auto& [_, c] : candidates_) {
        if (c.peer.id == *subject_ && !c.peer.addrs.empty()) {
          result_.peer = c.peer;
          result_.found = true;
          finish();
          return;
        }
      }
    }
    step();
  }

 private:
  Message make_request() const {
    switch (kind_) {
      case LookupKind::find_node: return FindNode{origin_, target_};
      case LookupKind::get_providers: return GetProviders{origin_, target_};
      case LookupKind::find_peer: return FindPeer{origin_, *subject_};
    }
    return FindNode{origin_, target_};
  }

  void step() {
    if (finished_) return;

    std::size_t rank = 0;
    bool all_terminal = true;
    std::vector<Distance> launch;
    std::size_t slots = alpha_ > in_flight_ ? alpha_ - in_flight_ : 0;
    for (auto& [distance, c] : candidates_) {
      if (rank++ >= k_) break;
      if (c.state == QueryState::unqueried || c.state == QueryState::in_flight) all_terminal = false;
      if (c.state == QueryState::unqueried && launch.size() < slots) {
        c.state = QueryState::in_flight;
        launch.push_back(distance);
      }
    }
    if (all_terminal) {
      finish();
      return;
    }
    for (const auto& distance : launch) {
      auto& c = candidates_.at(distance);
      ++in_flight_;
      result_.rounds = std::max(result_.rounds, c.round);
      net_.call(c.peer, make_request(),
                [self = shared_from_this(), distance](std::optional<Message> reply) {
                  self->on_reply(distance, std::move(reply));
                });
    }
  }

  void merge(const std::vector<PeerInfo>& peers, int parent_round) {
    for (const auto& p : peers) {
      if (p.id == self_) continue;
      auto d = xor_distance(mf::dht_key(p.id), target_);
      auto it = candidates_.find(d);
      if (it == candidates_.end()) {
        candidates_.emplace(d, Candidate{p, QueryState::unqueried, parent_round + 1});
      } else if (it->second.peer.addrs.empty() && !p.addrs.empty()) {
        it->second.peer.addrs = p.addrs;
      }
      if (kind_ == LookupKind::find_peer && p.id == *subject_ && !p.addrs.empty()) {
        result_.peer = p;
        result_.found = true;
      }
    }
  }

  void on_reply(const Distance& distance, std::optional<Message> reply) {
    --in_flight_;
    if (finished_) return;
    auto& c = candidates_.at(distance);
    const int round = c.round;

    bool answered = false;
    if (reply) {
      if (auto* m = std::get_if<PeersReply>(&*reply); m && kind_ == LookupKind::find_node) {
        answered = true;
        merge(m->closer, round);
      } else if (auto* m = std::get_if<ProvidersReply>(&*reply);
                 m && kind_ == LookupKind::get_providers) {
        answered = true;
        if (!m->providers.empty()) {
          result_.providers = std::move(m->providers);
          result_.found = true;
        } else {
          merge(m->closer, round);
        }
      } else if (auto* m = std::get_if<FindPeerReply>(&*reply); m && kind_ == LookupKind::find_peer) {
        answered = true;
        if (m->record && m->record->id == *subject_ && !m->record->addrs.empty()) {
          result_.peer = std::move(*m->record);
          result_.found = true;
        } else {
          merge(m->closer, round);
        }
      }
    }
    c.state = answered ? QueryState::queried : QueryState::failed;
    if (answered)
      ++result_.queried;
    else
      ++result_.failed;
    result_.best_distance_trace.push_back(candidates_.begin()->first);

    if (result_.found) {
      finish();
      return;
    }
    step();
  }

  void finish() {
    finished_ = true;
    result_.finished = net_.now();
    std::size_t rank = 0;
    for (const auto& [_, c] : candidates_) {
      if (rank++ >= k_) break;
      result_.closest.push_back(c.peer);
    }
    auto cb = std::move(done_cb_);
    cb(std::move(result_));
  }

  Network& net_;
  LookupKind kind_;
  DhtKey target_;
  std::optional<PeerId> subject_;
  PeerId self_;
  Origin origin_;
  std::size_t k_;
  std::size_t alpha_;
  LookupCallback done_cb_;

  std::map<Distance, Candidate> candidates_;
  std::size_t in_flight_ = 0;
  bool finished_ = false;
  LookupResult result_;
};

}  // namespace

void iterative_lookup(Network& net, const DhtServer& local, LookupKind kind, const DhtKey& target,
                      std::optional<PeerId> subject, LookupCallback done) {
  if (kind == LookupKind::find_peer && !subject) {
    done(Errc::not_found);
    return;
  }
  std::make_shared<Walk>(net, local, kind, target, std::move(subject), std::move(done))->start();
}

void iterative_find_peers(Network& net, const DhtServer& local, const DhtKey& target,
                          LookupCallback done) {
  iterative_lookup(net, local, LookupKind::find_node, target, std::nullopt,
                   [done = std::move(done)](Result<LookupResult> r) {
                     if (r && r.value().queried == 0) {
                       done(Errc::no_reachable_peers);
                       return;
                     }
                     done(std::move(r));
                   });
}

void iterative_find_providers(Network& net, const DhtServer& local, const mf::Cid& cid,
                              LookupCallback done) {
  iterative_lookup(net, local, LookupKind::get_providers, mf::dht_key(cid), std::nullopt,
                   [done = std::move(done)](Result<LookupResult> r) {
                     if (r && !r.value().found) {
                       done(Errc::not_found);
                       return;
                     }
                     done(std::move(r));
                   });
}

void iterative_find_peer(Network& net, const DhtServer& local, const PeerId& peer,
                         LookupCallback done) {
  iterative_lookup(net, local, LookupKind::find_peer, mf::dht_key(peer), peer,
                   [done = std::move(done)](Result<LookupResult> r) {
                     if (r && !r.value().found) {
                       done(Errc::not_found);
                       return;
                     }
                     done(std::move(r));
                   });
}

}  // namespace ipfsim::dht
