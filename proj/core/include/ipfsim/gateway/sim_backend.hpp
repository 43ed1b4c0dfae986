// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/gateway/gateway.hpp"
#include "ipfsim/simnet/network.hpp"

#include <mutex>

namespace ipfsim::gw {

/// Backs a gateway with one simulated host. Network fetches advance the
/// simulation until the retrieval completes; all access is serialised.
class SimBackend final : public Backend {
 public:
  SimBackend(sim::SimNetwork& net, std::size_t host) : net_(net), host_(host) {}

  VTime now() const override;
  std::optional<Bytes> local(const mf::Cid& cid) override;
  Result<Fetched> fetch(const mf::Cid& cid, bool pin) override;

  /// Runs the simulation to `until` under the backend lock.
  void advance(VTime until);

  node::Node& node() { return net_.host(host_).node(); }
  std::mutex& mutex() { return mutex_; }

 private:
  sim::SimNetwork& net_;
  std::size_t host_;
  mutable std::mutex mutex_;
};

}  // namespace ipfsim::gw
