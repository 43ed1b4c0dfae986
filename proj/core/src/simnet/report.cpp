// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/simnet/report.hpp"

#include "ipfsim/gateway/gateway.hpp"
#include "ipfsim/node/phase_timing.hpp"
#include "ipfsim/simnet/churn.hpp"
#include "ipfsim/simnet/stats.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace ipfsim::sim {

namespace {

using Json = nlohmann::json;

constexpr std::pair<ReportKind, std::string_view> kNames[] = {
    {ReportKind::publication_cdf, "publication-cdf"},
    {ReportKind::retrieval_cdf, "retrieval-cdf"},
    {ReportKind::stretch, "stretch"},
    {ReportKind::churn_cdf, "churn-cdf"},
    {ReportKind::crawl_summary, "crawl-summary"},
    {ReportKind::gateway_stats, "gateway-stats"},
};

Duration from_ms(double ms) { return Duration(static_cast<Duration::rep>(std::llround(ms * 1e6))); }

Result<std::vector<Json>> read_lines(std::istream& in) {
  std::vector<Json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return Errc::malformed_message;
    out.push_back(std::move(j));
  }
  return out;
}

bool is_op(const Json& j, std::string_view op) {
  return j.contains("op") && j["op"].is_string() && j["op"].get<std::string>() == op;
}

double num(const Json& j, const char* key) {
  return j.contains(key) && j[key].is_number() ? j[key].get<double>() : 0.0;
}

Status publication_cdf(const std::vector<Json>& lines, std::ostream& csv) {
  std::vector<double> total, walk, rpc;
  for (const auto& j : lines) {
    if (!is_op(j, "publish") || !j.value("success", false)) continue;
    total.push_back(num(j, "total_ms") / 1000.0);
    walk.push_back(num(j, "walk_ms") / 1000.0);
    rpc.push_back(num(j, "rpc_ms") / 1000.0);
  }
  if (total.empty()) return Errc::empty_window;
  write_cdf_csv(csv, "total", empirical_cdf(total));
  write_cdf_csv(csv, "walk", empirical_cdf(walk), false);
  write_cdf_csv(csv, "rpc", empirical_cdf(rpc), false);
  return outcome::success();
}

Status retrieval_cdf(const std::vector<Json>& lines, std::ostream& csv) {
  std::vector<double> total, walk, fetch;
  for (const auto& j : lines) {
    if (!is_op(j, "retrieve") || !j.value("success", false)) continue;
    total.push_back(num(j, "total_ms") / 1000.0);
    walk.push_back(num(j, "walk_ms") / 1000.0);
    fetch.push_back(j.contains("phases") ? num(j["phases"], "fetch") / 1000.0 : 0.0);
  }
  if (total.empty()) return Errc::empty_window;
  write_cdf_csv(csv, "total", empirical_cdf(total));
  write_cdf_csv(csv, "walk", empirical_cdf(walk), false);
  write_cdf_csv(csv, "fetch", empirical_cdf(fetch), false);
  return outcome::success();
}

Status stretch(const std::vector<Json>& lines, std::ostream& csv) {
  std::vector<double> full, trimmed;
  for (const auto& j : lines) {
    if (!is_op(j, "retrieve") || !j.value("success", false) || !j.contains("phases")) continue;
    const auto& p = j["phases"];
    node::PhaseTiming t{from_ms(num(p, "discover")), from_ms(num(p, "dial")),
                        from_ms(num(p, "negotiate")), from_ms(num(p, "fetch"))};
    auto a = node::compute_stretch(t);
    auto b = node::compute_stretch(t, node::StretchOptions{true});
    if (!a || !b) continue;
    full.push_back(a.value());
    trimmed.push_back(b.value());
  }
  if (full.empty()) return Errc::empty_window;
  write_cdf_csv(csv, "stretch", empirical_cdf(full));
  write_cdf_csv(csv, "stretch_without_bitswap", empirical_cdf(trimmed), false);
  return outcome::success();
}

Status churn_cdf(const std::vector<Json>& lines, std::ostream& csv, const ReportOptions& options) {
  std::vector<SessionObservation> obs;
  VTime lo = VTime::max();
  VTime hi = VTime::min();
  for (const auto& j : lines) {
    if (!is_op(j, "session")) continue;
    SessionObservation o;
    o.start = from_ms(num(j, "start_ms"));
    o.end = from_ms(num(j, "end_ms"));
    o.censored = j.value("censored", false);
    lo = std::min(lo, o.start);
    hi = std::max(hi, o.end);
    obs.push_back(o);
  }
  if (obs.empty()) return Errc::empty_window;
  const Duration window = options.window.value_or(hi - lo);
  auto r = churn_cdf_create_based(obs, lo, window);
  if (!r) return r.error();
  write_cdf_csv(csv, "session_s", r.value().cdf);
  return outcome::success();
}

Status crawl_summary(const std::vector<Json>& lines, std::ostream& csv) {
  for (const auto& j : lines) {
    if (!is_op(j, "crawl")) continue;
    csv << "metric,value\n";
    for (const char* key : {"discovered", "dialable", "undialable", "requests", "duration_ms"})
      csv << key << "," << fmt::format("{}", num(j, key)) << "\n";
    return outcome::success();
  }
  return Errc::empty_window;
}

Status gateway_stats(const std::vector<Json>& lines, std::ostream& csv) {
  std::vector<gw::AccessLogEntry> log;
  for (const auto& j : lines) {
    if (!j.contains("tier") || !j.contains("status")) continue;
    gw::AccessLogEntry e;
    e.timestamp = from_ms(num(j, "timestamp_ms"));
    e.size = static_cast<std::size_t>(num(j, "size"));
    e.status = static_cast<int>(num(j, "status"));
    const auto tier = j["tier"].get<std::string>();
    if (tier == "front") e.tier = gw::Tier::front;
    if (tier == "node") e.tier = gw::Tier::node;
    if (tier == "network") e.tier = gw::Tier::network;
    log.push_back(e);
  }
  auto s = gw::cache_stats(log);
  if (!s) return s.error();
  const auto& v = s.value();
  csv << "tier,requests,rate,bytes_share\n";
  csv << fmt::format("front,{},{:.6f},{:.6f}\n", v.front, v.front_rate, v.front_bytes_share);
  csv << fmt::format("node,{},{:.6f},{:.6f}\n", v.node, v.node_rate, v.node_bytes_share);
  csv << fmt::format("network,{},{:.6f},{:.6f}\n", v.network, v.network_rate, v.network_bytes_share);
  csv << fmt::format("errors,{},,\n", v.errors);
  return outcome::success();
}

}  // namespace

Result<ReportKind> parse_report_kind(std::string_view name) {
  for (const auto& [kind, n] : kNames)
    if (n == name) return kind;
  return Errc::invalid_config;
}

std::string_view report_kind_name(ReportKind kind) {
  for (const auto& [k, n] : kNames)
    if (k == kind) return n;
  return "";
}

Status write_report(std::istream& log, ReportKind kind, std::ostream& csv,
                    const ReportOptions& options) {
  auto lines = read_lines(log);
  if (!lines) return lines.error();
  switch (kind) {
    case ReportKind::publication_cdf: return publication_cdf(lines.value(), csv);
    case ReportKind::retrieval_cdf: return retrieval_cdf(lines.value(), csv);
    case ReportKind::stretch: return stretch(lines.value(), csv);
    case ReportKind::churn_cdf: return churn_cdf(lines.value(), csv, options);
    case ReportKind::crawl_summary: return crawl_summary(lines.value(), csv);
    case ReportKind::gateway_stats: return gateway_stats(lines.value(), csv);
  }
  return Errc::invalid_config;
}

}  // namespace ipfsim::sim
