// SPDX-License-Identifier: Apache-2.0

#include "support/oracles.hpp"

#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Ran {
  int code = -1;
  std::string out;
};

Ran sh(const std::string& args) {
  const std::string cmd = std::string(IPFSIM_CLI) + " " + args + " 2>/dev/null";
  Ran r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ipfsim-cli-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter()++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string scenario(const std::string& name) { return std::string(IPFSIM_SCENARIOS) + "/" + name; }

}  // namespace

TEST_CASE("add then get") {
  TempDir d;
  std::mt19937_64 rng(1);
  oracle::Bytes content(700000);
  for (auto& b : content) b = static_cast<std::uint8_t>(rng());
  {
    std::ofstream f(d / "in.bin", std::ios::binary);
    f.write(reinterpret_cast<const char*>(content.data()), static_cast<std::streamsize>(content.size()));
  }
  const std::string repo = "--repo " + d / "repo";
  auto add = sh("add " + d / "in.bin" + " " + repo);
  REQUIRE(add.code == 0);
  const std::string cid = trim(add.out);
  CHECK(cid.rfind("bafy", 0) == 0);
  CHECK(trim(sh("add " + d / "in.bin" + " " + repo).out) == cid);

  auto get = sh("get " + cid + " " + repo + " -o " + d / "out.bin");
  REQUIRE(get.code == 0);
  CHECK(slurp(d / "out.bin") == slurp(d / "in.bin"));

  // Stored blocks are files named by CID; the leaf names follow the reference hash.
  const auto leaf = oracle::sha256(content.data(), 262144);
  oracle::Bytes bin{0x01, 0x55, 0x12, 0x20};
  bin.insert(bin.end(), leaf.begin(), leaf.end());
  CHECK(fs::exists(fs::path(d / "repo") / "blocks" / ("b" + oracle::base32(bin))));

  // A smaller chunk size gives a different root for the same bytes.
  auto small = sh("add " + d / "in.bin" + " --repo " + d / "repo2" + " --chunk-size 65536");
  REQUIRE(small.code == 0);
  CHECK(trim(small.out) != cid);
}

TEST_CASE("exit codes") {
  TempDir d;
  CHECK(sh("").code == 1);
  CHECK(sh("frobnicate").code == 1);
  CHECK(sh("add").code == 1);
  CHECK(sh("add " + d / "missing.bin").code == 1);
  CHECK(sh("get not-a-cid --repo " + d / "r").code == 2);
  CHECK(sh("get bafkreifjjcie6lypi6ny7amxnfftagclbuxndqonfipmb64f2km2devei4 --repo " + d / "r").code == 2);
  CHECK(sh("sim --scenario " + scenario("small.cfg") + " --set no_such_key=1").code == 2);
  CHECK(sh("--help").code == 0);
}

TEST_CASE("sim is deterministic and reports") {
  TempDir d;
  const std::string args = "sim --scenario " + scenario("small.cfg") + " --set iterations=3 --seed 5";
  auto a = sh(args + " --out " + d / "a");
  auto b = sh(args + " --out " + d / "b");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out.find("retrievals verified: 15/15") != std::string::npos);
  const auto log_a = slurp(fs::path(d / "a") / "events.jsonl");
  CHECK_FALSE(log_a.empty());
  CHECK(log_a == slurp(fs::path(d / "b") / "events.jsonl"));
  CHECK(fs::exists(fs::path(d / "a") / "publication_percentiles.csv"));
  CHECK(fs::exists(fs::path(d / "a") / "retrieval_cdf.csv"));

  auto other = sh("sim --scenario " + scenario("small.cfg") + " --set iterations=3 --seed 6 --out " + d / "c");
  REQUIRE(other.code == 0);
  CHECK(slurp(fs::path(d / "c") / "events.jsonl") != log_a);

  const std::string log = (fs::path(d / "a") / "events.jsonl").string();
  auto stretch = sh("report --log " + log + " --kind stretch");
  REQUIRE(stretch.code == 0);
  CHECK(stretch.out.rfind("series,x,p", 0) == 0);
  CHECK(stretch.out.find("stretch_without_bitswap") != std::string::npos);

  auto pubs = sh("report --log " + log + " --kind publication-cdf --out " + d / "p.csv");
  REQUIRE(pubs.code == 0);
  CHECK(slurp(d / "p.csv").find("walk,") != std::string::npos);

  CHECK(sh("report --log " + log + " --kind churn-cdf").code == 2);  // no sessions
  CHECK(sh("report --log " + log + " --kind nonsense").code != 0);
}

TEST_CASE("crawl subcommand") {
  TempDir d;
  auto r = sh("crawl --scenario " + scenario("small.cfg") + " --set servers=150 --set clients=20 --out " + d / "c");
  REQUIRE(r.code == 0);
  auto summary = sh("report --log " + (fs::path(d / "c") / "events.jsonl").string() + " --kind crawl-summary");
  REQUIRE(summary.code == 0);
  CHECK(summary.out.find("discovered,156") != std::string::npos);
}

TEST_CASE("gateway serves content added to the repo") {
  TempDir d;
  {
    std::ofstream f(d / "page.txt");
    f << "served through the gateway\n";
  }
  const std::string repo = "--repo " + d / "repo";
  const std::string cid = trim(sh("add " + d / "page.txt " + repo).out);
  REQUIRE_FALSE(cid.empty());

  const std::string cmd = std::string(IPFSIM_CLI) + " gateway " + repo + " --scenario " + scenario("small.cfg") +
                          " --listen 127.0.0.1:0 --duration 5 --access-log " + d / "access.jsonl" +
                          " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char line[256] = {};
  REQUIRE(fgets(line, sizeof line, p) != nullptr);
  const std::string text = line;
  const auto colon = text.rfind(':');
  REQUIRE(text.rfind("listening on", 0) == 0);
  const int port = std::stoi(text.substr(colon + 1));

  httplib::Client cli("127.0.0.1", port);
  cli.set_read_timeout(30, 0);
  auto r1 = cli.Get("/ipfs/" + cid);
  REQUIRE(r1);
  CHECK(r1->status == 200);
  CHECK(r1->body == "served through the gateway\n");
  CHECK(r1->get_header_value("X-Cache-Tier") == "network");
  auto r2 = cli.Get("/ipfs/" + cid);
  REQUIRE(r2);
  CHECK(r2->get_header_value("X-Cache-Tier") == "front");

  // The gateway exits on its own once the duration elapses.
  CHECK(pclose(p) == 0);
  auto stats = sh("report --log " + d / "access.jsonl" + " --kind gateway-stats");
  REQUIRE(stats.code == 0);
  CHECK(stats.out.find("front,1,0.5") != std::string::npos);
}
