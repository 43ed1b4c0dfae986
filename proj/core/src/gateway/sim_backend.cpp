// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/gateway/sim_backend.hpp"

namespace ipfsim::gw {

VTime SimBackend::now() const {
  std::lock_guard lock(mutex_);
  return net_.now();
}

std::optional<Bytes> SimBackend::local(const mf::Cid& cid) {
  std::lock_guard lock(mutex_);
  auto content = dag::reassemble(net_.host(host_).node().store(), cid);
  if (!content) return std::nullopt;
  return std::move(content).value();
}

Result<Fetched> SimBackend::fetch(const mf::Cid& cid, bool pin) {
  std::lock_guard lock(mutex_);
  auto& node = net_.host(host_).node();
  std::optional<node::RetrievalReport> report;
  node.retrieve(cid, [&report](node::RetrievalReport r) { report = std::move(r); });
  while (!report && net_.clock().step()) {
  }
  if (!report) return Errc::not_found;
  if (!report->success) return report->error ? report->error : make_error_code(Errc::not_found);
  if (pin) node.pin(cid);
  return Fetched{std::move(report->content), report->total()};
}

void SimBackend::advance(VTime until) {
  std::lock_guard lock(mutex_);
  net_.clock().run_until(until);
}

}  // namespace ipfsim::gw
