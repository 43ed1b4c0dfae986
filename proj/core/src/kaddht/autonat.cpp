// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/kaddht/autonat.hpp"

#include <memory>

namespace ipfsim::dht {

DhtRole autonat_decide(int successful_dialbacks) {
  return successful_dialbacks >= kAutonatServerThreshold ? DhtRole::server : DhtRole::client;
}

void autonat_probe(Network& net, const Origin& origin, const std::vector<PeerInfo>& connected,
                   std::function<void(AutonatOutcome)> done) {
  const std::size_t n = std::min(connected.size(), kAutonatProbes);
  if (n == 0) {
    done(AutonatOutcome{});
    return;
  }
  struct State {
    AutonatOutcome outcome;
    std::size_t pending = 0;
    std::function<void(AutonatOutcome)> done;
  };
  auto state = std::make_shared<State>();
  state->outcome.probes = static_cast<int>(n);
  state->pending = n;
  state->done = std::move(done);
  for (std::size_t i = 0; i < n; ++i) {
    net.call(connected[i], DialBack{origin}, [state](std::optional<Message> reply) {
      if (reply) {
        if (auto* r = std::get_if<DialBackReply>(&*reply); r && r->reachable)
          ++state->outcome.successes;
      }
      if (--state->pending == 0) {
        state->outcome.role = autonat_decide(state->outcome.successes);
        auto cb = std::move(state->done);
        cb(state->outcome);
      }
    });
  }
}

}  // namespace ipfsim::dht
