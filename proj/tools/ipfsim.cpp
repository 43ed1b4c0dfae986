// SPDX-License-Identifier: Apache-2.0
//
// ipfsim: local block repository, simulated IPFS network and HTTP gateway.
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include "ipfsim/gateway/gateway.hpp"
#include "ipfsim/gateway/http_server.hpp"
#include "ipfsim/gateway/sim_backend.hpp"
#include "ipfsim/merkledag/block_dump.hpp"
#include "ipfsim/node/report.hpp"
#include "ipfsim/simnet/experiment.hpp"
#include "ipfsim/simnet/report.hpp"
#include "ipfsim/simnet/scenario.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace ipfsim;

namespace {

constexpr int kUsage = 1;
constexpr int kRuntime = 2;

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

bool g_verbose = false;

template <typename... Args>
void debug(fmt::format_string<Args...> f, Args&&... args) {
  if (g_verbose) std::cerr << "ipfsim: " << fmt::format(f, std::forward<Args>(args)...) << "\n";
}

int fail(const std::string& what) {
  std::cerr << "ipfsim: " << what << "\n";
  return kRuntime;
}

constexpr const char* kDefaultRepo = ".ipfsim";

// Repo layout: <repo>/blocks holds a block dump, <repo>/roots lists root CIDs.
fs::path blocks_dir(const fs::path& repo) { return repo / "blocks"; }
fs::path roots_file(const fs::path& repo) { return repo / "roots"; }

std::vector<std::string> read_roots(const fs::path& repo) {
  std::vector<std::string> out;
  std::ifstream in(roots_file(repo));
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

Result<Bytes> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return Errc::not_found;
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

Result<sim::Scenario> scenario_from(const std::string& path, const std::vector<std::string>& sets) {
  std::string text;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) return Errc::not_found;
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  for (const auto& s : sets) text += "\n" + s;
  return sim::parse_scenario(text);
}

struct ScenarioArgs {
  std::string path;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  bool seed_given = false;

  void attach(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--scenario,--config", path, "Scenario file (key = value lines)");
    if (required) opt->required()->check(CLI::ExistingFile);
    else opt->check(CLI::ExistingFile);
    cmd->add_option("--set", sets, "Override a scenario key (key=value), repeatable");
    cmd->add_option("--seed", seed, "Random seed (defaults to the scenario's)")
        ->each([this](const std::string&) { seed_given = true; });
  }

  Result<sim::Scenario> load() const { return scenario_from(path, sets); }
  std::uint64_t seed_for(const sim::Scenario& s) const { return seed_given ? seed : s.seed; }
};

// ---- add / get -------------------------------------------------------------

int cmd_add(const std::string& file, const fs::path& repo, std::size_t chunk_size,
            std::size_t fanout) {
  auto content = read_file(file);
  if (!content) return fail(fmt::format("cannot read {}", file));
  const auto build = dag::import_content(content.value(), chunk_size, fanout);
  std::error_code ec;
  fs::create_directories(blocks_dir(repo), ec);
  if (ec) return fail(fmt::format("cannot create {}: {}", repo.string(), ec.message()));
  if (auto st = dag::write_block_dump(blocks_dir(repo), build.blocks); !st)
    return fail(fmt::format("writing blocks: {}", st.error().message()));
  const auto root = build.root.str();
  const auto roots = read_roots(repo);
  if (std::find(roots.begin(), roots.end(), root) == roots.end()) {
    std::ofstream out(roots_file(repo), std::ios::app);
    out << root << "\n";
  }
  debug("{} blocks, {} bytes", build.blocks.size(), content.value().size());
  std::cout << root << "\n";
  return 0;
}

int cmd_get(const std::string& cid_text, const fs::path& repo, const std::string& out_path) {
  auto cid = mf::Cid::parse(cid_text);
  if (!cid) return fail(fmt::format("invalid CID: {}", cid_text));
  dag::BlockStore store;
  auto loaded = dag::load_block_dump(blocks_dir(repo), store);
  if (!loaded) return fail(fmt::format("loading repo: {}", loaded.error().message()));
  auto content = dag::reassemble(store, cid.value());
  if (!content) return fail(fmt::format("{}: {}", cid_text, content.error().message()));
  const auto& bytes = content.value();
  if (out_path.empty() || out_path == "-") {
    std::cout.write(reinterpret_cast<const char*>(bytes.data()),
                    static_cast<std::streamsize>(bytes.size()));
    std::cout.flush();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) return fail(fmt::format("cannot write {}", out_path));
  }
  return 0;
}

// ---- live world shared by daemon and gateway --------------------------------

struct LiveWorld {
  sim::Scenario scenario;
  sim::World world;
  std::size_t home = 0;      // node driven by this process
  std::size_t provider = 0;  // node holding the repo content
};

Result<LiveWorld> start_world(const sim::Scenario& scenario, std::uint64_t seed, const fs::path& repo,
                              bool repo_on_home) {
  auto w = sim::build_world(scenario, seed);
  if (!w) return w.error();
  LiveWorld live{scenario, std::move(w.value())};
  auto& net = *live.world.net;
  live.home = live.world.vantage.front();
  live.provider = live.home;
  if (!repo_on_home) {
    if (live.world.vantage.size() > 1) {
      live.provider = live.world.vantage[1];
    } else {
      const std::set<std::size_t> dead(live.world.dead.begin(), live.world.dead.end());
      for (auto s : live.world.servers)
        if (!dead.contains(s)) {
          live.provider = s;
          break;
        }
    }
  }
  if (scenario.churn)
    sim::apply_churn(net, live.world.servers, scenario.churn_model, net.now() + scenario.horizon,
                     seed ^ 0xc4u);

  // Publish every repo root from the provider through the DHT.
  dag::BlockStore repo_store;
  if (fs::exists(blocks_dir(repo))) {
    auto loaded = dag::load_block_dump(blocks_dir(repo), repo_store);
    if (!loaded) return loaded.error();
  }
  auto& node = net.host(live.provider).node();
  std::size_t pending = 0;
  for (const auto& text : read_roots(repo)) {
    auto cid = mf::Cid::parse(text);
    if (!cid) continue;
    auto content = dag::reassemble(repo_store, cid.value());
    if (!content) continue;
    ++pending;
    node.publish(content.value(), [&pending, text](Result<node::PublicationReport> r) {
      --pending;
      if (r) debug("published {} ({} stores)", text, r.value().provide.stored_at.size());
      else debug("publishing {} failed: {}", text, r.error().message());
    });
  }
  while (pending > 0 && net.clock().step()) {
  }
  return live;
}

void maintain(sim::SimNetwork& net, VTime now) {
  for (std::size_t i = 0; i < net.size(); ++i) {
    auto& h = net.host(i);
    if (!h.online()) continue;
    h.node().republish_tick(now);
    h.node().gc_tick(now);
  }
}

bool parse_listen(const std::string& listen, std::string& host, int& port) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) return false;
  host = listen.substr(0, colon);
  try {
    port = std::stoi(listen.substr(colon + 1));
  } catch (...) {
    return false;
  }
  return port >= 0 && port < 65536;
}

void install_signals() {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
}

int cmd_daemon(const ScenarioArgs& args, const fs::path& repo, double duration_s, double status_s) {
  auto scenario = args.load();
  if (!scenario) return fail(fmt::format("scenario: {}", scenario.error().message()));
  const auto seed = args.seed_for(scenario.value());
  auto live = start_world(scenario.value(), seed, repo, true);
  if (!live) return fail(fmt::format("startup: {}", live.error().message()));
  auto& net = *live.value().world.net;
  auto& node = net.host(live.value().home).node();
  install_signals();

  // Virtual time follows the wall clock from here on.
  const auto wall0 = std::chrono::steady_clock::now();
  const VTime virt0 = net.now();
  VTime next_status = virt0;
  VTime next_maintenance = virt0 + std::chrono::hours(1);
  std::cout << fmt::format("{{\"op\":\"daemon\",\"node\":\"{}\",\"hosts\":{}}}\n", node.id().str(),
                           net.size())
            << std::flush;
  while (!g_stop) {
    const auto elapsed = std::chrono::steady_clock::now() - wall0;
    if (duration_s > 0 && elapsed >= std::chrono::duration<double>(duration_s)) break;
    const VTime target = virt0 + std::chrono::duration_cast<Duration>(elapsed);
    net.clock().run_until(target);
    if (net.now() >= next_maintenance) {
      maintain(net, net.now());
      next_maintenance += std::chrono::hours(1);
    }
    if (net.now() >= next_status) {
      std::cout << fmt::format(
                       "{{\"op\":\"status\",\"t_ms\":{:.3f},\"routing_table\":{},\"blocks\":{},"
                       "\"connections\":{},\"dht_requests\":{}}}\n",
                       to_millis(net.now()), node.dht().table().size(), node.store().block_count(),
                       net.host(live.value().home).connections().size(),
                       node.counters().dht_requests_sent)
                << std::flush;
      next_status += std::chrono::duration_cast<Duration>(std::chrono::duration<double>(status_s));
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  return 0;
}

int cmd_gateway(const ScenarioArgs& args, const fs::path& repo, const std::string& listen,
                std::size_t capacity, bool pin, const std::string& access_log_path,
                double duration_s) {
  std::string host;
  int port = 0;
  if (!parse_listen(listen, host, port)) {
    std::cerr << "ipfsim: --listen expects host:port\n";
    return kUsage;
  }
  auto scenario = args.load();
  if (!scenario) return fail(fmt::format("scenario: {}", scenario.error().message()));
  auto live = start_world(scenario.value(), args.seed_for(scenario.value()), repo, false);
  if (!live) return fail(fmt::format("startup: {}", live.error().message()));

  gw::SimBackend backend(*live.value().world.net, live.value().home);
  gw::GatewayConfig config;
  config.listen = listen;
  config.front_capacity_bytes = capacity;
  config.pin_fetched = pin;
  if (auto st = config.validate(); !st) return fail("invalid gateway configuration");
  gw::Gateway gateway(config, backend);

  std::ofstream access_file;
  if (!access_log_path.empty()) {
    access_file.open(access_log_path, std::ios::app);
    if (!access_file) return fail(fmt::format("cannot open {}", access_log_path));
  }
  gw::HttpServer server(gateway, [&access_file](const std::string& line) {
    if (access_file.is_open()) access_file << line << "\n" << std::flush;
    else std::cerr << line << "\n";
  });
  auto bound = server.bind(host, port);
  if (!bound) return fail(fmt::format("cannot listen on {}", listen));
  install_signals();
  server.start();
  std::cout << fmt::format("listening on {}:{}", host, bound.value()) << "\n" << std::flush;

  const auto wall0 = std::chrono::steady_clock::now();
  while (!g_stop) {
    if (duration_s > 0 &&
        std::chrono::steady_clock::now() - wall0 >= std::chrono::duration<double>(duration_s))
      break;
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  server.stop();
  return 0;
}

// ---- sim / crawl / report ---------------------------------------------------

void print_table(const std::string& title, const std::vector<sim::PercentileRow>& rows) {
  if (rows.empty()) return;
  std::cout << title << " (s)\n";
  std::cout << fmt::format("  {:<13} {:>9} {:>9} {:>9} {:>6}\n", "region", "p50", "p90", "p95", "n");
  for (const auto& r : rows)
    std::cout << fmt::format("  {:<13} {:>9.3f} {:>9.3f} {:>9.3f} {:>6}\n", r.label, r.p50, r.p90,
                             r.p95, r.n);
}

int cmd_sim(const ScenarioArgs& args, const std::string& out_dir, bool force_crawl) {
  auto scenario = args.load();
  if (!scenario) return fail(fmt::format("scenario: {}", scenario.error().message()));
  auto s = scenario.value();
  if (force_crawl) s.workload = sim::Workload::crawl;
  const auto seed = args.seed_for(s);
  debug("running {} (seed {})", s.name, seed);
  auto out = sim::run(s, seed);
  if (!out) return fail(fmt::format("run: {}", out.error().message()));
  const auto& o = out.value();
  if (!out_dir.empty()) {
    if (auto st = sim::write_outputs(o, out_dir); !st)
      return fail(fmt::format("writing {}: {}", out_dir, st.error().message()));
  }

  std::cout << fmt::format("scenario {} seed {}: {} events, {:.1f} s virtual\n", s.name, seed,
                           o.events, to_seconds(o.finished));
  if (s.workload == sim::Workload::publish_retrieve) {
    print_table("publication", sim::publication_table(o.experiment));
    print_table("retrieval", sim::retrieval_table(o.experiment));
    std::size_t ok = 0;
    for (const auto& r : o.experiment.retrievals) ok += r.content_matches ? 1 : 0;
    std::cout << fmt::format("retrievals verified: {}/{}\n", ok, o.experiment.retrievals.size());
  }
  if (o.crawl) {
    std::cout << fmt::format("crawl: {} peers, {} dialable, {} undialable, {:.1f} s\n",
                             o.crawl->peers.size(), o.crawl->dialable(), o.crawl->undialable(),
                             to_seconds(o.crawl->finished - o.crawl->started));
  }
  if (!o.sessions.empty()) std::cout << fmt::format("sessions observed: {}\n", o.sessions.size());
  return 0;
}

int cmd_report(const std::string& log_path, const std::string& kind_text, const std::string& out,
               double window_s) {
  auto kind = sim::parse_report_kind(kind_text);
  if (!kind) {
    std::cerr << "ipfsim: unknown report kind: " << kind_text << "\n";
    return kUsage;
  }
  std::ifstream log(log_path);
  if (!log) return fail(fmt::format("cannot read {}", log_path));
  sim::ReportOptions options;
  if (window_s > 0) options.window = std::chrono::duration_cast<Duration>(std::chrono::duration<double>(window_s));
  std::ostringstream csv;
  if (auto st = sim::write_report(log, kind.value(), csv, options); !st)
    return fail(fmt::format("report {}: {}", kind_text, st.error().message()));
  if (out.empty() || out == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream f(out);
    f << csv.str();
    if (!f) return fail(fmt::format("cannot write {}", out));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ipfsim: content-addressed storage, DHT simulation and HTTP gateway"};
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", g_verbose, "Debug output on stderr");
  if (const char* env = std::getenv("IPFSIM_VERBOSE")) g_verbose = std::string(env) != "0";

  std::string repo = kDefaultRepo;

  auto* add = app.add_subcommand("add", "Import a file into the local repo and print its root CID");
  std::string add_file;
  std::size_t chunk_size = dag::kDefaultChunkSize;
  std::size_t fanout = dag::kDefaultFanout;
  add->add_option("file", add_file, "File to import")->required()->check(CLI::ExistingFile);
  add->add_option("--repo", repo, "Repository directory");
  add->add_option("--chunk-size", chunk_size, "Leaf size in bytes")->check(CLI::PositiveNumber);
  add->add_option("--fanout", fanout, "Maximum links per interior node")->check(CLI::Range(2, 1 << 16));

  auto* get = app.add_subcommand("get", "Reassemble content from the local repo");
  std::string get_cid, get_out;
  get->add_option("cid", get_cid, "Root CID")->required();
  get->add_option("--repo", repo, "Repository directory");
  get->add_option("-o,--out", get_out, "Output file (default stdout)");

  auto* daemon = app.add_subcommand("daemon", "Run a node inside a simulated network in real time");
  ScenarioArgs daemon_args;
  double daemon_duration = 0, daemon_status = 60;
  daemon_args.attach(daemon, false);
  daemon->add_option("--repo", repo, "Repository directory to provide");
  daemon->add_option("--duration", daemon_duration, "Stop after this many seconds (0 = until signal)");
  daemon->add_option("--status-interval", daemon_status, "Seconds between status lines")
      ->check(CLI::PositiveNumber);

  auto* gateway = app.add_subcommand("gateway", "Serve GET /ipfs/{cid} backed by a simulated node");
  ScenarioArgs gateway_args;
  std::string listen = "127.0.0.1:8080", access_log;
  std::size_t capacity = 64u << 20;
  bool pin_fetched = false;
  double gateway_duration = 0;
  gateway_args.attach(gateway, false);
  gateway->add_option("--repo", repo, "Repository published by a remote node at startup");
  gateway->add_option("--listen", listen, "host:port (port 0 picks a free port)");
  gateway->add_option("--cache-bytes", capacity, "Front cache capacity")->check(CLI::PositiveNumber);
  gateway->add_flag("--pin-fetched", pin_fetched, "Pin content fetched from the network");
  gateway->add_option("--access-log", access_log, "Append JSON access log lines here");
  gateway->add_option("--duration", gateway_duration, "Stop after this many seconds (0 = until signal)");

  auto* simc = app.add_subcommand("sim", "Run a scenario and write logs, tables and CDFs");
  ScenarioArgs sim_args;
  std::string sim_out;
  sim_args.attach(simc, true);
  simc->add_option("--out", sim_out, "Output directory");

  auto* crawl = app.add_subcommand("crawl", "Crawl the simulated DHT and summarise reachability");
  ScenarioArgs crawl_args;
  std::string crawl_out;
  crawl_args.attach(crawl, true);
  crawl->add_option("--out", crawl_out, "Output directory");

  auto* report = app.add_subcommand("report", "Turn a JSON-lines log into a CSV table");
  std::string log_path, kind, report_out;
  double window_s = 0;
  report->add_option("--log", log_path, "Event or access log")->required()->check(CLI::ExistingFile);
  report->add_option("--kind", kind,
                     "publication-cdf | retrieval-cdf | stretch | churn-cdf | crawl-summary | "
                     "gateway-stats")
      ->required();
  report->add_option("--out", report_out, "Output CSV (default stdout)");
  report->add_option("--window-s", window_s, "churn-cdf observation window in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  if (add->parsed()) return cmd_add(add_file, repo, chunk_size, fanout);
  if (get->parsed()) return cmd_get(get_cid, repo, get_out);
  if (daemon->parsed()) return cmd_daemon(daemon_args, repo, daemon_duration, daemon_status);
  if (gateway->parsed())
    return cmd_gateway(gateway_args, repo, listen, capacity, pin_fetched, access_log, gateway_duration);
  if (simc->parsed()) return cmd_sim(sim_args, sim_out, false);
  if (crawl->parsed()) return cmd_sim(crawl_args, crawl_out, true);
  if (report->parsed()) return cmd_report(log_path, kind, report_out, window_s);
  return kUsage;
}
