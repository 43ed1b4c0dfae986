// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/kaddht/provide.hpp"

#include <memory>

namespace ipfsim::dht {
namespace {

struct RpcPhase {
  ProvideReport report;
  ProvideCallback done;
  VTime phase_start{};
  VTime phase_end{};
  std::size_t pending = 0;
  std::vector<bool> stored;
  std::vector<PeerInfo> targets;

  void finish() {
    report.rpc_phase = phase_end - phase_start;
    for (std::size_t i = 0; i < targets.size(); ++i)
      if (stored[i]) report.stored_at.push_back(targets[i].id);
    auto cb = std::move(done);
    cb(std::move(report));
  }
};

}  // namespace

void provide(Network& net, const DhtServer& local, const DhtKey& key, ProvideCallback done) {
  if (local.role() != DhtRole::server) {
    done(Errc::cannot_provide);
    return;
  }
  const VTime started = net.now();
  const PeerInfo self = local.self();
  const Origin origin = local.origin();

  iterative_lookup(
      net, local, LookupKind::find_node, key, std::nullopt,
      [&net, key, started, self, origin, done = std::move(done)](Result<LookupResult> walk) mutable {
        if (!walk) {
          done(walk.error());
          return;
        }
        auto phase = std::make_shared<RpcPhase>();
        phase->done = std::move(done);
        phase->report.key = key;
        phase->report.started = started;
        phase->report.walk = walk.value().finished - started;
        phase->report.walk_rounds = walk.value().rounds;
        phase->targets = std::move(walk.value().closest);
        phase->stored.assign(phase->targets.size(), false);
        phase->phase_start = net.now();
        phase->phase_end = phase->phase_start;
        for (const auto& t : phase->targets) phase->report.targets.push_back(t.id);

        const AddProvider message{origin, key, self};
        auto send_to = [&net, phase, message](std::size_t i) {
          const Duration issue = net.send(phase->targets[i], message);
          phase->stored[i] = true;
          phase->phase_end = std::max(phase->phase_end, net.now() + issue);
        };

        std::vector<std::size_t> to_dial;
        for (std::size_t i = 0; i < phase->targets.size(); ++i) {
          if (net.is_connected(phase->targets[i].id))
            send_to(i);
          else
            to_dial.push_back(i);
        }
        if (to_dial.empty()) {
          phase->finish();
          return;
        }
        phase->pending = to_dial.size();
        phase->report.dials = static_cast<int>(to_dial.size());
        for (auto i : to_dial) {
          net.dial(phase->targets[i], [&net, phase, send_to, i](bool connected) {
            if (connected) {
              send_to(i);
            } else {
              ++phase->report.dial_failures;
              phase->phase_end = std::max(phase->phase_end, net.now());
            }
            if (--phase->pending == 0) phase->finish();
          });
        }
      });
}

void RepublishTracker::provided(const mf::Cid& cid, VTime at) { last_[cid] = at; }

void RepublishTracker::forget(const mf::Cid& cid) { last_.erase(cid); }

std::vector<mf::Cid> RepublishTracker::due(VTime now) const {
  std::vector<mf::Cid> out;
  for (const auto& [cid, at] : last_)
    if (now - at >= interval_) out.push_back(cid);
  return out;
}

}  // namespace ipfsim::dht
