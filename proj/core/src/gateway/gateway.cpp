// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/gateway/gateway.hpp"

#include <json.hpp>

namespace ipfsim::gw {

std::string_view tier_name(Tier t) {
  switch (t) {
    case Tier::front: return "front";
    case Tier::node: return "node";
    case Tier::network: return "network";
  }
  return "network";
}

Status GatewayConfig::validate() const {
  if (front_capacity_bytes == 0) return Errc::invalid_config;
  return outcome::success();
}

std::string access_log_line(const AccessLogEntry& e) {
  nlohmann::ordered_json j;
  j["timestamp_ms"] = to_millis(e.timestamp);
  j["cid"] = e.cid;
  j["size"] = e.size;
  j["upstream_latency_ms"] = to_millis(e.upstream_latency);
  j["tier"] = e.tier ? std::string(tier_name(*e.tier)) : std::string();
  j["status"] = e.status;
  return j.dump();
}

Result<CacheStats> cache_stats(const std::vector<AccessLogEntry>& log, VTime from, VTime to) {
  CacheStats s;
  std::uint64_t bytes[3] = {0, 0, 0};
  for (const auto& e : log) {
    if (e.timestamp < from || e.timestamp >= to) continue;
    if (e.status != 200 || !e.tier) {
      ++s.errors;
      continue;
    }
    ++s.requests;
    const auto t = static_cast<std::size_t>(*e.tier);
    bytes[t] += e.size;
    if (*e.tier == Tier::front) ++s.front;
    if (*e.tier == Tier::node) ++s.node;
    if (*e.tier == Tier::network) ++s.network;
  }
  if (s.requests == 0) return Errc::empty_window;
  const auto n = static_cast<double>(s.requests);
  s.front_rate = static_cast<double>(s.front) / n;
  s.node_rate = static_cast<double>(s.node) / n;
  s.network_rate = static_cast<double>(s.network) / n;
  const double total = static_cast<double>(bytes[0] + bytes[1] + bytes[2]);
  if (total > 0) {
    s.front_bytes_share = static_cast<double>(bytes[0]) / total;
    s.node_bytes_share = static_cast<double>(bytes[1]) / total;
    s.network_bytes_share = static_cast<double>(bytes[2]) / total;
  }
  return s;
}

Result<CacheStats> cache_stats(const std::vector<AccessLogEntry>& log) {
  return cache_stats(log, VTime::min(), VTime::max());
}

Gateway::Gateway(GatewayConfig config, Backend& backend)
    : config_(std::move(config)), backend_(backend), front_(config_.front_capacity_bytes) {}

GatewayCounters Gateway::counters() const {
  std::lock_guard lock(mutex_);
  return counters_;
}

std::vector<AccessLogEntry> Gateway::access_log() const {
  std::lock_guard lock(mutex_);
  return log_;
}

void Gateway::record(AccessLogEntry e) {
  std::lock_guard lock(mutex_);
  log_.push_back(std::move(e));
}

Result<Fetched> Gateway::fetch_once(const mf::Cid& cid, const std::string& key) {
  std::shared_future<Result<Fetched>> future;
  std::promise<Result<Fetched>> promise;
  bool leader = false;
  {
    std::lock_guard lock(mutex_);
    if (auto it = in_flight_.find(key); it != in_flight_.end()) {
      future = it->second;
      ++counters_.coalesced;
    } else {
      future = promise.get_future().share();
      in_flight_.emplace(key, future);
      ++counters_.network_fetches;
      leader = true;
    }
  }
  if (leader) {
    auto r = backend_.fetch(cid, config_.pin_fetched);
    if (r) front_.put(key, std::make_shared<const Bytes>(r.value().content));
    promise.set_value(std::move(r));
    std::lock_guard lock(mutex_);
    in_flight_.erase(key);
  }
  return future.get();
}

Response Gateway::handle(std::string_view method, std::string_view path) {
  Response res;
  AccessLogEntry entry;
  entry.timestamp = backend_.now();
  auto finish = [&](int status, std::string error = {}) {
    res.status = status;
    res.error = std::move(error);
    entry.status = status;
    entry.tier = res.tier;
    entry.size = res.body ? res.body->size() : 0;
    record(entry);
    return res;
  };

  if (method != "GET") return finish(405, "method not allowed");
  constexpr std::string_view prefix = "/ipfs/";
  if (!path.starts_with(prefix)) return finish(404, "not found");
  std::string_view text = path.substr(prefix.size());
  if (!text.empty() && text.back() == '/') text.remove_suffix(1);
  entry.cid = std::string(text);
  auto cid = mf::Cid::parse(text);
  if (!cid) return finish(400, "invalid cid: " + cid.error().message());
  const std::string key = cid.value().str();

  if (auto hit = front_.get(key)) {
    res.tier = Tier::front;
    res.body = *hit;
    return finish(200);
  }

  {
    std::lock_guard lock(mutex_);
    ++counters_.local_lookups;
  }
  if (auto local = backend_.local(cid.value())) {
    auto body = std::make_shared<const Bytes>(std::move(*local));
    front_.put(key, body);
    res.tier = Tier::node;
    res.body = std::move(body);
    return finish(200);
  }

  auto fetched = fetch_once(cid.value(), key);
  if (!fetched) return finish(504, fetched.error().message());
  entry.upstream_latency = fetched.value().latency;
  res.tier = Tier::network;
  res.body = std::make_shared<const Bytes>(fetched.value().content);
  return finish(200);
}

}  // namespace ipfsim::gw
