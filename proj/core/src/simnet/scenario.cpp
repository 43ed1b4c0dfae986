// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/simnet/scenario.hpp"

#include "ipfsim/simnet/latency.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <fmt/format.h>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ipfsim::sim {

std::string_view workload_name(Workload w) {
  switch (w) {
    case Workload::none: return "none";
    case Workload::publish_retrieve: return "publish-retrieve";
    case Workload::crawl: return "crawl";
    case Workload::monitor: return "monitor";
  }
  return "none";
}

namespace {

std::string_view dist_name(DistKind k) {
  switch (k) {
    case DistKind::exponential: return "exponential";
    case DistKind::lognormal: return "lognormal";
    case DistKind::weibull: return "weibull";
  }
  return "exponential";
}

template <typename T>
Status parse_number(const std::string& v, T& out) {
  try {
    out = boost::lexical_cast<T>(v);
  } catch (const boost::bad_lexical_cast&) {
    return Errc::invalid_config;
  }
  return outcome::success();
}

Status parse_bool(const std::string& v, bool& out) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") {
    out = true;
  } else if (v == "off" || v == "false" || v == "0" || v == "no") {
    out = false;
  } else {
    return Errc::invalid_config;
  }
  return outcome::success();
}

Status parse_seconds(const std::string& v, Duration& out) {
  double s = 0;
  if (auto st = parse_number(v, s); !st) return st;
  out = from_seconds(s);
  return outcome::success();
}

using Setter = std::function<Status(Scenario&, const std::string&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"name", [](Scenario& s, const std::string& v) { s.name = v; return Status(outcome::success()); }},
      {"seed", [](Scenario& s, const std::string& v) { return parse_number(v, s.seed); }},
      {"regions",
       [](Scenario& s, const std::string& v) {
         s.regions.clear();
         boost::split(s.regions, v, boost::is_any_of(","));
         for (auto& r : s.regions) boost::trim(r);
         return Status(outcome::success());
       }},
      {"servers", [](Scenario& s, const std::string& v) { return parse_number(v, s.servers); }},
      {"clients", [](Scenario& s, const std::string& v) { return parse_number(v, s.clients); }},
      {"dead_fraction", [](Scenario& s, const std::string& v) { return parse_number(v, s.dead_fraction); }},
      {"quic_fraction", [](Scenario& s, const std::string& v) { return parse_number(v, s.quic_fraction); }},
      {"ws_fraction", [](Scenario& s, const std::string& v) { return parse_number(v, s.ws_fraction); }},
      {"many_addrs_fraction",
       [](Scenario& s, const std::string& v) { return parse_number(v, s.many_addrs_fraction); }},
      {"many_addrs", [](Scenario& s, const std::string& v) { return parse_number(v, s.many_addrs); }},
      {"jitter_sigma", [](Scenario& s, const std::string& v) { return parse_number(v, s.jitter_sigma); }},
      {"bandwidth_mbps", [](Scenario& s, const std::string& v) { return parse_number(v, s.bandwidth_mbps); }},
      {"negotiate_rtts", [](Scenario& s, const std::string& v) { return parse_number(v, s.negotiate_rtts); }},
      {"workload",
       [](Scenario& s, const std::string& v) {
         for (auto w : {Workload::none, Workload::publish_retrieve, Workload::crawl, Workload::monitor})
           if (workload_name(w) == v) {
             s.workload = w;
             return Status(outcome::success());
           }
         return Status(Errc::invalid_config);
       }},
      {"iterations", [](Scenario& s, const std::string& v) { return parse_number(v, s.iterations); }},
      {"object_size", [](Scenario& s, const std::string& v) { return parse_number(v, s.object_size); }},
      {"object_size_max", [](Scenario& s, const std::string& v) { return parse_number(v, s.object_size_max); }},
      {"iteration_gap_s", [](Scenario& s, const std::string& v) { return parse_seconds(v, s.iteration_gap); }},
      {"horizon_s", [](Scenario& s, const std::string& v) { return parse_seconds(v, s.horizon); }},
      {"monitor_window_s", [](Scenario& s, const std::string& v) { return parse_seconds(v, s.monitor_window); }},
      {"crawl_concurrency",
       [](Scenario& s, const std::string& v) { return parse_number(v, s.crawl_concurrency); }},
      {"churn", [](Scenario& s, const std::string& v) { return parse_bool(v, s.churn); }},
      {"log_churn", [](Scenario& s, const std::string& v) { return parse_bool(v, s.log_churn); }},
      {"churn_session_mean_s",
       [](Scenario& s, const std::string& v) { return parse_seconds(v, s.churn_model.session.mean); }},
      {"churn_session_dist",
       [](Scenario& s, const std::string& v) {
         auto d = parse_dist(v);
         if (!d) return Status(d.error());
         s.churn_model.session.kind = d.value();
         return Status(outcome::success());
       }},
      {"churn_session_shape",
       [](Scenario& s, const std::string& v) { return parse_number(v, s.churn_model.session.shape); }},
      {"churn_offline_mean_s",
       [](Scenario& s, const std::string& v) { return parse_seconds(v, s.churn_model.offline.mean); }},
      {"churn_offline_dist",
       [](Scenario& s, const std::string& v) {
         auto d = parse_dist(v);
         if (!d) return Status(d.error());
         s.churn_model.offline.kind = d.value();
         return Status(outcome::success());
       }},
      {"churn_offline_shape",
       [](Scenario& s, const std::string& v) { return parse_number(v, s.churn_model.offline.shape); }},
      {"k", [](Scenario& s, const std::string& v) { return parse_number(v, s.k); }},
      {"alpha", [](Scenario& s, const std::string& v) { return parse_number(v, s.alpha); }},
      {"bitswap_timeout_s",
       [](Scenario& s, const std::string& v) { return parse_seconds(v, s.bitswap_timeout); }},
      {"bitswap_early_exit",
       [](Scenario& s, const std::string& v) { return parse_bool(v, s.bitswap_early_exit); }},
      {"addrs_with_records_probability",
       [](Scenario& s, const std::string& v) { return parse_number(v, s.addrs_with_records_probability); }},
      {"republish", [](Scenario& s, const std::string& v) { return parse_bool(v, s.republish); }},
      {"republish_interval_s",
       [](Scenario& s, const std::string& v) { return parse_seconds(v, s.republish_interval); }},
      {"record_ttl_s", [](Scenario& s, const std::string& v) { return parse_seconds(v, s.record_ttl); }},
      {"provide_granularity",
       [](Scenario& s, const std::string& v) {
         if (v == "root-only") {
           s.provide_granularity = node::ProvideGranularity::root_only;
         } else if (v == "all-blocks") {
           s.provide_granularity = node::ProvideGranularity::all_blocks;
         } else {
           return Status(Errc::invalid_config);
         }
         return Status(outcome::success());
       }},
  };
  return table;
}

bool fraction(double f) { return f >= 0.0 && f <= 1.0; }

}  // namespace

Status Scenario::validate() const {
  if (regions.empty()) return Errc::invalid_config;
  if (!RegionLatencyModel::six_regions().subset(regions)) return Errc::invalid_config;
  if (!fraction(dead_fraction) || !fraction(quic_fraction) || !fraction(ws_fraction) ||
      quic_fraction + ws_fraction > 1.0 || !fraction(many_addrs_fraction))
    return Errc::invalid_config;
  if (many_addrs == 0 || jitter_sigma < 0.0 || bandwidth_mbps <= 0.0 || negotiate_rtts < 0)
    return Errc::invalid_config;
  if (object_size_max != 0 && object_size_max < object_size) return Errc::invalid_config;
  if (iteration_gap < Duration::zero() || horizon <= Duration::zero() ||
      monitor_window <= Duration::zero() || crawl_concurrency == 0)
    return Errc::invalid_config;
  if (churn)
    if (auto st = churn_model.validate(); !st) return st;
  return node_config().validate();
}

node::NodeConfig Scenario::node_config() const {
  node::NodeConfig c;
  c.dht.k = k;
  c.dht.alpha = alpha;
  c.dht.provider_ttl = record_ttl;
  c.dht.republish_interval = republish_interval;
  c.dht.addrs_with_records_probability = addrs_with_records_probability;
  c.bitswap.fallback_timeout = bitswap_timeout;
  c.bitswap.early_exit = bitswap_early_exit;
  c.republish = republish;
  c.provide_granularity = provide_granularity;
  c.cache_ttl = record_ttl;
  return c;
}

std::string Scenario::to_text() const {
  auto b = [](bool v) { return v ? "on" : "off"; };
  auto secs = [](Duration d) { return fmt::format("{}", to_seconds(d)); };
  std::ostringstream o;
  o << "name = " << name << "\n"
    << "seed = " << seed << "\n"
    << "regions = " << boost::join(regions, ",") << "\n"
    << "servers = " << servers << "\n"
    << "clients = " << clients << "\n"
    << "dead_fraction = " << fmt::format("{}", dead_fraction) << "\n"
    << "quic_fraction = " << fmt::format("{}", quic_fraction) << "\n"
    << "ws_fraction = " << fmt::format("{}", ws_fraction) << "\n"
    << "many_addrs_fraction = " << fmt::format("{}", many_addrs_fraction) << "\n"
    << "many_addrs = " << many_addrs << "\n"
    << "jitter_sigma = " << fmt::format("{}", jitter_sigma) << "\n"
    << "bandwidth_mbps = " << fmt::format("{}", bandwidth_mbps) << "\n"
    << "negotiate_rtts = " << negotiate_rtts << "\n"
    << "workload = " << workload_name(workload) << "\n"
    << "iterations = " << iterations << "\n"
    << "object_size = " << object_size << "\n"
    << "object_size_max = " << object_size_max << "\n"
    << "iteration_gap_s = " << secs(iteration_gap) << "\n"
    << "horizon_s = " << secs(horizon) << "\n"
    << "monitor_window_s = " << secs(monitor_window) << "\n"
    << "crawl_concurrency = " << crawl_concurrency << "\n"
    << "churn = " << b(churn) << "\n"
    << "log_churn = " << b(log_churn) << "\n"
    << "churn_session_dist = " << dist_name(churn_model.session.kind) << "\n"
    << "churn_session_mean_s = " << secs(churn_model.session.mean) << "\n"
    << "churn_session_shape = " << fmt::format("{}", churn_model.session.shape) << "\n"
    << "churn_offline_dist = " << dist_name(churn_model.offline.kind) << "\n"
    << "churn_offline_mean_s = " << secs(churn_model.offline.mean) << "\n"
    << "churn_offline_shape = " << fmt::format("{}", churn_model.offline.shape) << "\n"
    << "k = " << k << "\n"
    << "alpha = " << alpha << "\n"
    << "bitswap_timeout_s = " << secs(bitswap_timeout) << "\n"
    << "bitswap_early_exit = " << b(bitswap_early_exit) << "\n"
    << "addrs_with_records_probability = " << fmt::format("{}", addrs_with_records_probability) << "\n"
    << "republish = " << b(republish) << "\n"
    << "republish_interval_s = " << secs(republish_interval) << "\n"
    << "record_ttl_s = " << secs(record_ttl) << "\n"
    << "provide_granularity = "
    << (provide_granularity == node::ProvideGranularity::root_only ? "root-only" : "all-blocks") << "\n";
  return o.str();
}

Result<Scenario> parse_scenario(std::string_view text) {
  Scenario s;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    boost::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) return Errc::invalid_config;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    boost::trim(key);
    boost::trim(value);
    auto it = setters().find(key);
    if (it == setters().end()) return Errc::invalid_config;
    if (auto st = it->second(s, value); !st) return st.error();
  }
  if (auto st = s.validate(); !st) return st.error();
  return s;
}

Result<Scenario> load_scenario(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) return Errc::invalid_config;
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace ipfsim::sim
