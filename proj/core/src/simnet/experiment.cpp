// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/simnet/experiment.hpp"

#include "ipfsim/node/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <map>

namespace ipfsim::sim {

namespace {

using Json = nlohmann::ordered_json;

// Independent streams derived from the run seed.
std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Result<World> build_world(const Scenario& scenario, std::uint64_t seed) {
  if (auto st = scenario.validate(); !st) return st.error();
  auto latency = RegionLatencyModel::six_regions(scenario.jitter_sigma).subset(scenario.regions);
  if (!latency) return latency.error();

  World w;
  NetConfig nc;
  nc.bandwidth_bps = scenario.bandwidth_mbps * 1e6;
  nc.negotiate_rtts = scenario.negotiate_rtts;
  w.net = std::make_unique<SimNetwork>(std::move(latency).value(), nc, derive(seed, 0));
  auto& net = *w.net;
  const auto config = scenario.node_config();
  const std::size_t regions = scenario.regions.size();

  for (std::size_t r = 0; r < regions; ++r) {
    HostSpec spec;
    spec.region = r;
    auto vc = config;
    vc.role_policy = node::RolePolicy::force_server;
    vc.disconnect_after_retrieve = true;
    w.vantage.push_back(net.add_host(spec, vc));
  }

  std::mt19937_64 rng(derive(seed, 1));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pick_transport = [&] {
    const double x = u(rng);
    if (x < scenario.ws_fraction) return TransportKind::ws;
    if (x < scenario.ws_fraction + scenario.quic_fraction) return TransportKind::quic;
    return TransportKind::tcp;
  };
  for (std::size_t i = 0; i < scenario.servers; ++i) {
    HostSpec spec;
    spec.region = i % regions;
    spec.transport = pick_transport();
    spec.addresses = u(rng) < scenario.many_addrs_fraction ? scenario.many_addrs : 1;
    const bool dead = u(rng) < scenario.dead_fraction;
    w.servers.push_back(net.add_host(spec, config));
    if (dead) w.dead.push_back(w.servers.back());
  }
  for (std::size_t i = 0; i < scenario.clients; ++i) {
    HostSpec spec;
    spec.region = i % regions;
    spec.transport = pick_transport();
    spec.dialable = false;
    spec.role = dht::DhtRole::client;
    w.clients.push_back(net.add_host(spec, config));
  }
  {
    HostSpec spec;
    spec.role = dht::DhtRole::client;
    spec.dialable = false;
    auto cc = config;
    cc.role_policy = node::RolePolicy::force_client;
    w.crawler = net.add_host(spec, cc);
  }

  build_converged(net, derive(seed, 2));
  for (auto d : w.dead) net.set_online(d, false);
  return w;
}

void apply_churn(SimNetwork& net, const std::vector<std::size_t>& hosts, const ChurnModel& model,
                 VTime horizon, std::uint64_t seed,
                 std::function<void(std::size_t, bool)> on_change) {
  struct State {
    SimNetwork* net;
    ChurnModel model;
    VTime horizon;
    std::mt19937_64 rng;
    std::function<void(std::size_t, bool)> on_change;
  };
  auto s = std::make_shared<State>(State{&net, model, horizon, std::mt19937_64(seed), std::move(on_change)});

  // Shared recursion through a std::function held by the state.
  auto toggle = std::make_shared<std::function<void(std::size_t, bool)>>();
  *toggle = [s, weak = std::weak_ptr(toggle)](std::size_t host, bool online) {
    auto self = weak.lock();
    if (!self) return;
    s->net->set_online(host, online);
    if (s->on_change) s->on_change(host, online);
    const Duration next = online ? s->model.sample_session(s->net->host(host).spec().region, s->rng)
                                 : s->model.sample_offline(s->rng);
    const VTime at = s->net->now() + next;
    if (at < s->horizon)
      s->net->clock().schedule_at(at, [self, host, online] { (*self)(host, !online); });
  };

  const double mean_on = to_seconds(model.session.mean);
  const double mean_off = to_seconds(model.offline.mean);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto h : hosts) {
    // Start in the stationary state with a random residual time.
    const bool online = u(s->rng) < mean_on / (mean_on + mean_off);
    const Duration residual = online ? model.sample_session(net.host(h).spec().region, s->rng)
                                     : model.sample_offline(s->rng);
    net.set_online(h, online);
    const VTime at = net.now() + residual;
    if (at < horizon) net.clock().schedule_at(at, [toggle, h, online] { (*toggle)(h, !online); });
  }
}

namespace {

struct ExperimentState {
  World* world = nullptr;
  Scenario scenario;
  std::mt19937_64 content_rng;
  std::function<void(const std::string&)> log;
  std::function<void(ExperimentResult)> done;
  ExperimentResult result;
  std::size_t iteration = 0;
  std::size_t pending = 0;
};

void start_iteration(const std::shared_ptr<ExperimentState>& s);

void finish_iteration(const std::shared_ptr<ExperimentState>& s) {
  auto& net = *s->world->net;
  // Measurement nodes never answer each other's next retrieval through Bitswap.
  for (auto a : s->world->vantage)
    for (auto b : s->world->vantage)
      if (a < b) net.disconnect(a, b);
  ++s->iteration;
  if (s->iteration >= s->scenario.iterations) {
    auto cb = std::move(s->done);
    cb(std::move(s->result));
    return;
  }
  net.clock().schedule(s->scenario.iteration_gap, [s] { start_iteration(s); });
}

void start_iteration(const std::shared_ptr<ExperimentState>& s) {
  auto& world = *s->world;
  auto& net = *world.net;
  const std::size_t regions = world.vantage.size();
  const std::size_t pub_region = s->iteration % regions;
  const std::size_t publisher = world.vantage[pub_region];

  std::size_t size = s->scenario.object_size;
  if (s->scenario.object_size_max > s->scenario.object_size)
    size = std::uniform_int_distribution<std::size_t>(s->scenario.object_size,
                                                      s->scenario.object_size_max)(s->content_rng);
  auto content = std::make_shared<Bytes>(size);
  for (auto& b : *content) b = static_cast<std::uint8_t>(s->content_rng() & 0xff);

  const std::size_t it = s->iteration;
  net.host(publisher).node().publish(*content, [s, content, pub_region, publisher,
                                                it](Result<node::PublicationReport> r) {
    auto& world = *s->world;
    auto& net = *world.net;
    const auto& region = s->scenario.regions[pub_region];
    PublicationRecord rec;
    rec.iteration = it;
    rec.region = region;
    rec.success = bool(r);
    if (r) rec.report = r.value();
    if (s->log) {
      if (r) {
        s->log(node::publication_record(rec.report, region, net.host(publisher).id()));
      } else {
        Json j;
        j["op"] = "publish";
        j["region"] = region;
        j["success"] = false;
        j["error"] = r.error().message();
        s->log(j.dump());
      }
    }
    s->result.publications.push_back(std::move(rec));
    if (!r) {
      finish_iteration(s);
      return;
    }
    const mf::Cid root = r.value().root;
    s->pending = world.vantage.size() - 1;
    if (s->pending == 0) {
      finish_iteration(s);
      return;
    }
    for (std::size_t reg = 0; reg < world.vantage.size(); ++reg) {
      if (reg == pub_region) continue;
      const std::size_t retriever = world.vantage[reg];
      net.host(retriever).node().retrieve(root, [s, content, reg, retriever,
                                                 it](node::RetrievalReport rr) {
        auto& net = *s->world->net;
        RetrievalRecord rec;
        rec.iteration = it;
        rec.region = s->scenario.regions[reg];
        rec.content_matches = rr.success && rr.content == *content;
        rr.content.clear();
        rr.content.shrink_to_fit();
        rec.report = std::move(rr);
        if (s->log) s->log(node::retrieval_record(rec.report, rec.region, net.host(retriever).id()));
        s->result.retrievals.push_back(std::move(rec));
        if (--s->pending == 0) finish_iteration(s);
      });
    }
  });
}

}  // namespace

void experiment_publish_retrieve(World& world, const Scenario& scenario, std::uint64_t seed,
                                 std::function<void(const std::string&)> log,
                                 std::function<void(ExperimentResult)> done) {
  auto s = std::make_shared<ExperimentState>();
  s->world = &world;
  s->scenario = scenario;
  s->content_rng.seed(derive(seed, 3));
  s->log = std::move(log);
  s->done = std::move(done);
  if (scenario.iterations == 0 || world.vantage.empty()) {
    auto cb = std::move(s->done);
    cb({});
    return;
  }
  start_iteration(s);
}

namespace {

// Republish and garbage collection on every node once per hour.
void schedule_maintenance(SimNetwork& net, const bool* stop) {
  net.clock().schedule(std::chrono::hours(1), [&net, stop] {
    if (*stop) return;
    for (std::size_t i = 0; i < net.size(); ++i) {
      Host& h = net.host(i);
      if (!h.online()) continue;
      h.node().republish_tick(net.now());
      h.node().gc_tick(net.now());
    }
    schedule_maintenance(net, stop);
  });
}

}  // namespace

Result<RunOutput> run(const Scenario& scenario, std::uint64_t seed) {
  auto built = build_world(scenario, seed);
  if (!built) return built.error();
  World world = std::move(built).value();
  auto& net = *world.net;

  RunOutput out;
  out.scenario = scenario;
  out.seed = seed;
  auto log = [&out](const std::string& line) { out.log.push_back(line); };

  {
    Json j;
    j["op"] = "start";
    j["scenario"] = scenario.name;
    j["seed"] = seed;
    j["hosts"] = net.size();
    j["servers"] = world.servers.size();
    j["clients"] = world.clients.size();
    j["dead"] = world.dead.size();
    j["workload"] = workload_name(scenario.workload);
    log(j.dump());
  }

  bool stop = false;
  if (scenario.churn) {
    std::vector<std::size_t> churning = world.servers;
    churning.insert(churning.end(), world.clients.begin(), world.clients.end());
    std::function<void(std::size_t, bool)> on_change;
    if (scenario.log_churn)
      on_change = [&net, &log](std::size_t h, bool online) {
        Json j;
        j["op"] = "churn";
        j["t_ms"] = to_millis(net.now());
        j["node"] = net.host(h).id().str();
        j["online"] = online;
        log(j.dump());
      };
    apply_churn(net, churning, scenario.churn_model, VTime{scenario.horizon}, derive(seed, 4),
                on_change);
  }

  bool finished = false;
  switch (scenario.workload) {
    case Workload::none:
      finished = true;
      break;
    case Workload::publish_retrieve:
      schedule_maintenance(net, &stop);
      experiment_publish_retrieve(world, scenario, seed, log, [&](ExperimentResult r) {
        out.experiment = std::move(r);
        finished = true;
      });
      break;
    case Workload::crawl:
      crawl(net, world.crawler, world.vantage, scenario.crawl_concurrency, [&](CrawlResult r) {
        Json j;
        j["op"] = "crawl";
        j["t_ms"] = to_millis(net.now());
        j["discovered"] = r.peers.size();
        j["dialable"] = r.dialable();
        j["undialable"] = r.undialable();
        j["requests"] = r.requests;
        j["duration_ms"] = to_millis(r.finished - r.started);
        log(j.dump());
        for (const auto& [id, e] : r.peers) {
          Json p;
          p["op"] = "crawl-peer";
          p["node"] = id.str();
          p["dialable"] = e.dialable;
          p["addrs"] = e.addrs.size();
          p["bucket_entries"] = e.bucket_entries;
          log(p.dump());
        }
        out.crawl = std::move(r);
        finished = true;
      });
      break;
    case Workload::monitor: {
      std::vector<std::size_t> peers = world.servers;
      monitor(net, peers, scenario.monitor_window, [&](std::vector<SessionObservation> obs) {
        for (const auto& o : obs) {
          Json j;
          j["op"] = "session";
          j["node"] = o.peer.str();
          j["start_ms"] = to_millis(o.start);
          j["end_ms"] = to_millis(o.end);
          j["censored"] = o.censored;
          log(j.dump());
        }
        out.sessions = std::move(obs);
        finished = true;
      });
      break;
    }
  }

  while (!finished && net.clock().step()) {
  }
  stop = true;

  out.traffic = net.totals();
  out.in_flight_bytes = net.in_flight_bytes();
  out.events = net.clock().fired();
  out.finished = net.now();
  {
    Json j;
    j["op"] = "end";
    j["t_ms"] = to_millis(out.finished);
    j["events"] = out.events;
    j["bytes_sent"] = out.traffic.sent;
    j["bytes_received"] = out.traffic.received;
    j["bytes_dropped"] = out.traffic.dropped;
    j["bytes_in_flight"] = out.in_flight_bytes;
    log(j.dump());
  }
  return out;
}

namespace {

// Rows follow the publisher rotation, which walks the regions in order.
std::vector<PercentileRow> table_by_region(
    const std::vector<std::pair<std::string, double>>& samples, const ExperimentResult& r) {
  std::map<std::string, std::vector<double>> by_region;
  std::vector<std::string> order;
  for (const auto& p : r.publications)
    if (std::find(order.begin(), order.end(), p.region) == order.end()) order.push_back(p.region);
  std::vector<double> all;
  for (const auto& [region, v] : samples) {
    if (std::find(order.begin(), order.end(), region) == order.end()) order.push_back(region);
    by_region[region].push_back(v);
    all.push_back(v);
  }
  std::vector<PercentileRow> rows;
  for (const auto& region : order)
    if (by_region.contains(region)) rows.push_back(percentile_row(region, by_region[region]).value());
  if (!all.empty()) rows.push_back(percentile_row("all", all).value());
  return rows;
}

}  // namespace

std::vector<PercentileRow> publication_table(const ExperimentResult& r) {
  std::vector<std::pair<std::string, double>> samples;
  for (const auto& p : r.publications)
    if (p.success) samples.emplace_back(p.region, to_seconds(p.report.provide.total()));
  return table_by_region(samples, r);
}

std::vector<PercentileRow> retrieval_table(const ExperimentResult& r) {
  std::vector<std::pair<std::string, double>> samples;
  for (const auto& x : r.retrievals)
    if (x.report.success) samples.emplace_back(x.region, to_seconds(x.report.total()));
  return table_by_region(samples, r);
}

Status write_outputs(const RunOutput& out, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return ec;
  {
    std::ofstream f(dir / "events.jsonl");
    for (const auto& line : out.log) f << line << "\n";
    if (!f) return Errc::invalid_config;
  }
  if (!out.experiment.publications.empty()) {
    std::ofstream f(dir / "publication_percentiles.csv");
    write_percentile_csv(f, publication_table(out.experiment));
    std::ofstream c(dir / "publication_cdf.csv");
    std::vector<double> total, walk, rpc;
    for (const auto& p : out.experiment.publications) {
      if (!p.success) continue;
      total.push_back(to_seconds(p.report.provide.total()));
      walk.push_back(to_seconds(p.report.provide.walk));
      rpc.push_back(to_seconds(p.report.provide.rpc_phase));
    }
    write_cdf_csv(c, "total", empirical_cdf(total));
    write_cdf_csv(c, "walk", empirical_cdf(walk), false);
    write_cdf_csv(c, "rpc", empirical_cdf(rpc), false);
  }
  if (!out.experiment.retrievals.empty()) {
    std::ofstream f(dir / "retrieval_percentiles.csv");
    write_percentile_csv(f, retrieval_table(out.experiment));
    std::ofstream c(dir / "retrieval_cdf.csv");
    std::vector<double> total, walk, fetch;
    for (const auto& r : out.experiment.retrievals) {
      if (!r.report.success) continue;
      total.push_back(to_seconds(r.report.total()));
      walk.push_back(to_seconds(r.report.provider_walk + r.report.peer_walk));
      fetch.push_back(to_seconds(r.report.phases.fetch));
    }
    write_cdf_csv(c, "total", empirical_cdf(total));
    write_cdf_csv(c, "walk", empirical_cdf(walk), false);
    write_cdf_csv(c, "fetch", empirical_cdf(fetch), false);
  }
  return outcome::success();
}

}  // namespace ipfsim::sim
