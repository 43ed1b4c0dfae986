// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/bitswap/engine.hpp"

#include <deque>
#include <memory>

namespace ipfsim::bitswap {

Engine::Engine(Network& net, dag::BlockStore& store, BitswapConfig config)
    : net_(net), store_(store), config_(config) {}

std::optional<Message> Engine::serve(const Message& inbound) const {
  if (const auto* m = std::get_if<WantHave>(&inbound)) {
    if (store_.has(m->cid)) return Have{m->cid};
    return DontHave{m->cid};
  }
  if (const auto* m = std::get_if<WantBlock>(&inbound)) {
    if (auto block = store_.get(m->cid)) return BlockMsg{m->cid, std::move(block->data)};
    return DontHave{m->cid};
  }
  return std::nullopt;
}

void Engine::fetch(const PeerId& from, const mf::Cid& cid,
                   std::function<void(Result<dag::Block>)> done) {
  wantlist_.add(cid, WantKind::want_block, net_.now());
  net_.call(from, WantBlock{cid}, [this, from, cid, done = std::move(done)](std::optional<Message> reply) {
    auto* block = reply ? std::get_if<BlockMsg>(&*reply) : nullptr;
    if (block == nullptr || !(block->cid == cid)) {
      done(Errc::missing_block);
      return;
    }
    auto ok = dag::verify_block(cid, block->data);
    if (!ok || !ok.value()) {
      ++verification_failures_;
      net_.disconnect(from);
      done(Errc::verification_failed);
      return;
    }
    dag::Block verified{cid, std::move(block->data)};
    (void)store_.put(verified);
    wantlist_.remove(cid);
    ++blocks_received_;
    done(std::move(verified));
  });
}

namespace {

struct WantSession {
  WantOutcome outcome;
  std::function<void(WantOutcome)> done;
  std::deque<PeerId> holders;
  bool resolved = false;
  bool have_seen = false;
  bool fetching = false;
  int answered = 0;
};

}  // namespace

void Engine::want(const mf::Cid& cid, std::function<void(WantOutcome)> done) {
  auto session = std::make_shared<WantSession>();
  session->done = std::move(done);
  session->outcome.started = net_.now();
  wantlist_.add(cid, WantKind::want_have, net_.now());

  auto resolve = [this, session](WantOutcome::Kind kind) {
    if (session->resolved) return;
    session->resolved = true;
    session->outcome.kind = kind;
    session->outcome.resolved_at = net_.now();
    auto cb = std::move(session->done);
    cb(session->outcome);
  };

  // Tries HAVE responders in arrival order until one delivers a valid block.
  auto try_next = std::make_shared<std::function<void()>>();
  *try_next = [this, session, cid, resolve, self_ref = std::weak_ptr(try_next)]() {
    if (session->resolved || session->fetching) return;
    if (session->holders.empty()) {
      // Every holder misbehaved; hand over once the timeout has passed.
      const VTime deadline = session->outcome.started + config_.fallback_timeout;
      if (net_.now() >= deadline) {
        resolve(WantOutcome::Kind::fallback);
      } else {
        net_.schedule(deadline - net_.now(), [resolve] { resolve(WantOutcome::Kind::fallback); });
      }
      return;
    }
    const PeerId holder = session->holders.front();
    session->holders.pop_front();
    session->fetching = true;
    fetch(holder, cid, [session, holder, resolve, next = self_ref.lock()](Result<dag::Block> block) {
      session->fetching = false;
      if (session->resolved) return;
      if (block) {
        session->outcome.holder = holder;
        session->outcome.block = std::move(block).value();
        resolve(WantOutcome::Kind::block);
        return;
      }
      (*next)();
    });
  };

  const auto peers = net_.connected_peers();
  session->outcome.peers_asked = static_cast<int>(peers.size());
  for (const auto& peer : peers) {
    net_.call(peer, WantHave{cid}, [this, session, peer, resolve, try_next,
                                    asked = peers.size()](std::optional<Message> reply) {
      if (session->resolved) return;
      ++session->answered;
      if (reply && std::holds_alternative<Have>(*reply)) {
        if (!session->have_seen) {
          session->have_seen = true;
          session->outcome.have_at = net_.now();
        }
        session->holders.push_back(peer);
        (*try_next)();
        return;
      }
      ++session->outcome.dont_haves;
      if (config_.early_exit && !session->have_seen &&
          session->answered == static_cast<int>(asked)) {
        resolve(WantOutcome::Kind::fallback);
      }
    });
  }

  net_.schedule(config_.fallback_timeout, [session, resolve] {
    if (!session->have_seen) resolve(WantOutcome::Kind::fallback);
  });
}

}  // namespace ipfsim::bitswap
