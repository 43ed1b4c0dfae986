// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/node/report.hpp"

#include <json.hpp>

namespace ipfsim::node {

namespace {

double ms(Duration d) { return to_millis(d); }

}  // namespace

std::string publication_record(const PublicationReport& r, std::string_view region,
                               const PeerId& node, bool success) {
  nlohmann::ordered_json j;
  j["op"] = "publish";
  j["cid"] = r.root.str();
  j["region"] = region;
  j["node"] = node.str();
  j["t_ms"] = ms(r.provide.started);
  j["phases"] = {{"walk", ms(r.provide.walk)}, {"rpc", ms(r.provide.rpc_phase)}};
  j["total_ms"] = ms(r.provide.total());
  j["walk_ms"] = ms(r.provide.walk);
  j["rpc_ms"] = ms(r.provide.rpc_phase);
  j["walk_rounds"] = r.provide.walk_rounds;
  j["stored_at"] = r.provide.stored_at.size();
  j["dial_failures"] = r.provide.dial_failures;
  j["success"] = success;
  return j.dump();
}

std::string retrieval_record(const RetrievalReport& r, std::string_view region,
                             const PeerId& node) {
  nlohmann::ordered_json j;
  j["op"] = "retrieve";
  j["cid"] = r.cid.str();
  j["region"] = region;
  j["node"] = node.str();
  j["t_ms"] = ms(r.started);
  j["phases"] = {{"discover", ms(r.phases.discover)},
                 {"dial", ms(r.phases.dial)},
                 {"negotiate", ms(r.phases.negotiate)},
                 {"fetch", ms(r.phases.fetch)}};
  j["total_ms"] = ms(r.total());
  j["walk_ms"] = ms(r.provider_walk + r.peer_walk);
  j["provider_walk_ms"] = ms(r.provider_walk);
  j["peer_walk_ms"] = ms(r.peer_walk);
  j["rpc_ms"] = ms(r.phases.fetch);
  j["walks"] = r.walks;
  j["via_bitswap"] = r.via_bitswap;
  j["fallback"] = r.fallback;
  j["dht_rpcs"] = r.dht_rpcs;
  j["bytes"] = r.bytes;
  j["success"] = r.success;
  if (!r.success) j["error"] = r.error.message();
  return j.dump();
}

}  // namespace ipfsim::node
