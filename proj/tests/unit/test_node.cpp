// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/node/node.hpp"
#include "ipfsim/node/phase_timing.hpp"
#include "support/oracles.hpp"
#include "support/sim_fixture.hpp"

#include <doctest.h>

#include <random>

using namespace ipfsim;
using namespace ipfsim::node;

namespace {

Result<PublicationReport> publish(fixture::StaticNet& s, std::size_t host, const Bytes& content) {
  std::optional<Result<PublicationReport>> out;
  s.node(host).publish(content, [&](Result<PublicationReport> r) { out = std::move(r); });
  REQUIRE(fixture::run_until(*s, [&] { return out.has_value(); }));
  return std::move(*out);
}

RetrievalReport retrieve(fixture::StaticNet& s, std::size_t host, const Cid& cid) {
  std::optional<RetrievalReport> out;
  s.node(host).retrieve(cid, [&](RetrievalReport r) { out = std::move(r); });
  REQUIRE(fixture::run_until(*s, [&] { return out.has_value(); }));
  return std::move(*out);
}

Duration ms(double v) { return Duration{static_cast<std::int64_t>(v * 1e6)}; }

}  // namespace

TEST_SUITE("stretch") {
  TEST_CASE("worked examples") {
    PhaseTiming t{ms(2000), ms(300), ms(300), ms(400)};
    CHECK(compute_stretch(t).value() == doctest::Approx(3.0));
    PhaseTiming direct{Duration::zero(), ms(100), ms(100), ms(50)};
    CHECK(compute_stretch(direct).value() == 1.0);
    CHECK(compute_stretch(PhaseTiming{ms(10), {}, {}, {}}).error() == Errc::zero_denominator);
  }

  TEST_CASE("excluding the bitswap wait") {
    PhaseTiming t{ms(2000), ms(300), ms(300), ms(400)};
    StretchOptions o;
    o.exclude_bitswap_timeout = true;
    CHECK(compute_stretch(t, o).value() == doctest::Approx(2.0));
    // Below the timeout nothing is removed.
    PhaseTiming quick{ms(500), ms(300), ms(300), ms(400)};
    CHECK(compute_stretch(quick, o).value() == compute_stretch(quick).value());
  }

  TEST_CASE("matches a direct recomputation") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10000; ++i) {
      PhaseTiming t{Duration{static_cast<std::int64_t>(rng() % 10'000'000'000ULL)},
                    Duration{static_cast<std::int64_t>(rng() % 3'000'000'000ULL)},
                    Duration{static_cast<std::int64_t>(rng() % 1'000'000'000ULL)},
                    Duration{1 + static_cast<std::int64_t>(rng() % 5'000'000'000ULL)}};
      const auto den = t.dial.count() + t.negotiate.count() + t.fetch.count();
      const auto num = den + t.discover.count();
      CHECK(compute_stretch(t).value() == static_cast<double>(num) / static_cast<double>(den));
      CHECK(t.total() == t.discover + t.dial + t.negotiate + t.fetch);
    }
  }
}

TEST_SUITE("node") {
  TEST_CASE("publishing the same content twice") {
    auto s = fixture::make_static(60, 21);
    std::mt19937_64 rng(1);
    const auto content = fixture::random_bytes(rng, 700000);
    auto first = publish(s, s.servers[0], content);
    REQUIRE(first);
    CHECK(first.value().blocks_total == 4);
    CHECK(first.value().blocks_added == 4);
    CHECK(first.value().provide.stored_at.size() == 20);
    auto second = publish(s, s.servers[0], content);
    REQUIRE(second);
    CHECK(second.value().root == first.value().root);
    CHECK(second.value().blocks_added == 0);
    CHECK(s.node(s.servers[0]).pins().count(first.value().root) == 1);
  }

  TEST_CASE("clients cannot publish") {
    fixture::StaticOptions o;
    o.servers = 30;
    o.clients = 1;
    o.config.role_policy = RolePolicy::automatic;
    auto s = fixture::make_static(o);
    auto r = publish(s, s.clients[0], to_bytes("hello"));
    CHECK(r.error() == Errc::cannot_provide);
  }

  TEST_CASE("forced client role") {
    NodeConfig cfg;
    cfg.role_policy = RolePolicy::force_client;
    fixture::StaticOptions o;
    o.servers = 20;
    o.config = cfg;
    auto s = fixture::make_static(o);
    CHECK(s.node(s.servers[0]).role() == dht::DhtRole::client);
    CHECK(publish(s, s.servers[0], to_bytes("x")).error() == Errc::cannot_provide);
  }

  TEST_CASE("retrieval phases add up and content matches") {
    auto s = fixture::make_static(100, 22);
    std::mt19937_64 rng(2);
    const auto content = fixture::random_bytes(rng, 300000);
    auto pub = publish(s, s.servers[1], content);
    REQUIRE(pub);
    s->clock().run();
    auto r = retrieve(s, s.servers[77], pub.value().root);
    REQUIRE(r.success);
    CHECK(r.content == content);
    CHECK(r.fallback);
    CHECK_FALSE(r.via_bitswap);
    CHECK(r.provider == s.net->host(s.servers[1]).id());
    CHECK(r.total() == r.phases.discover + r.phases.dial + r.phases.negotiate + r.phases.fetch);
    CHECK(r.phases.discover >= 1s);
    CHECK(r.provider_walk_started - r.started == 1s);
    CHECK(r.dht_rpcs > 0);
    CHECK(r.bytes == content.size());
    // Retrieved blocks are verified against the reference hash.
    const auto leaf_digest = oracle::sha256(Bytes(content.begin(), content.begin() + 262144));
    bool seen = false;
    for (const auto& c : s.node(s.servers[77]).store().cids())
      if (c.codec == mf::codec::kRaw &&
          std::equal(c.hash.digest.begin(), c.hash.digest.end(), leaf_digest.begin()))
        seen = true;
    CHECK(seen);
  }

  TEST_CASE("second retrieval over a live connection skips the DHT") {
    auto s = fixture::make_static(80, 23);
    auto pub = publish(s, s.servers[2], to_bytes("shared bytes"));
    REQUIRE(pub);
    s->clock().run();
    auto first = retrieve(s, s.servers[40], pub.value().root);
    REQUIRE(first.success);
    auto& n40 = s.node(s.servers[40]);
    CHECK(n40.store().has(pub.value().root));
    s->clock().run();

    // A third peer connects to the new holder, then asks for the content.
    std::optional<bool> dialed;
    s.net->host(s.servers[41]).dial(s.net->host(s.servers[40]).id(), [&](bool ok) { dialed = ok; });
    REQUIRE(fixture::run_until(*s, [&] { return dialed.has_value(); }));
    REQUIRE(*dialed);
    auto second = retrieve(s, s.servers[41], pub.value().root);
    REQUIRE(second.success);
    CHECK(second.via_bitswap);
    CHECK(second.dht_rpcs == 0);
    CHECK(second.phases.discover < 1s);
    CHECK(second.phases.dial == Duration::zero());
  }

  TEST_CASE("unpublished content is not found") {
    auto s = fixture::make_static(50, 24);
    const auto cid = dag::import_content(to_bytes("never published")).root;
    auto r = retrieve(s, s.servers[3], cid);
    CHECK_FALSE(r.success);
    CHECK(r.error == Errc::not_found);
    CHECK(r.fallback);
  }

  TEST_CASE("retrievers become temporary providers") {
    auto s = fixture::make_static(80, 25);
    auto pub = publish(s, s.servers[0], to_bytes("popular"));
    REQUIRE(pub);
    s->clock().run();
    REQUIRE(retrieve(s, s.servers[10], pub.value().root).success);
    s->clock().run();

    std::optional<dht::LookupResult> found;
    auto& asker = s.node(s.servers[60]);
    // Both records sit at the same closest servers, so one reply carries both.
    dht::iterative_find_providers(asker.dht_network(), asker.dht(), pub.value().root,
                                  [&](Result<dht::LookupResult> r) { found = r.value(); });
    REQUIRE(fixture::run_until(*s, [&] { return found.has_value(); }));
    CHECK(found->providers.size() >= 2);
  }

  TEST_CASE("gc keeps pinned blocks and drops old cached ones") {
    auto s = fixture::make_static(60, 26);
    auto pub = publish(s, s.servers[0], to_bytes("cache me"));
    REQUIRE(pub);
    s->clock().run();
    auto& n = s.node(s.servers[5]);
    REQUIRE(retrieve(s, s.servers[5], pub.value().root).success);
    const VTime t0 = *n.cached_at(pub.value().root);
    CHECK(n.gc_tick(t0 + std::chrono::hours(23)).empty());
    const auto evicted = n.gc_tick(t0 + std::chrono::hours(24));
    CHECK(evicted == std::vector<Cid>{pub.value().root});
    CHECK_FALSE(n.store().has(pub.value().root));
    // The publisher pinned it.
    auto& owner = s.node(s.servers[0]);
    CHECK(owner.gc_tick(std::chrono::hours(100)).empty());
    CHECK(owner.store().has(pub.value().root));
    owner.unpin(pub.value().root);
    CHECK(owner.gc_tick(std::chrono::hours(100)).size() == 1);
  }

  TEST_CASE("republish tick after the interval") {
    auto s = fixture::make_static(40, 27);
    auto pub = publish(s, s.servers[0], to_bytes("republish"));
    REQUIRE(pub);
    auto& n = s.node(s.servers[0]);
    CHECK(n.republish_tick(std::chrono::hours(11)).empty());
    CHECK(n.republish_tick(s.net->now() + std::chrono::hours(12)) ==
          std::vector<Cid>{pub.value().root});
  }

  TEST_CASE("autonat promotes dialable hosts") {
    fixture::StaticOptions o;
    o.servers = 30;
    auto s = fixture::make_static(o);
    auto& n = s.node(s.servers[0]);
    // Connect to a handful of peers first.
    int pending = 0;
    for (int i = 1; i <= 8; ++i) {
      ++pending;
      s.net->host(s.servers[0]).dial(s.net->host(s.servers[i]).id(), [&](bool) { --pending; });
    }
    REQUIRE(fixture::run_until(*s, [&] { return pending == 0; }));
    std::optional<dht::AutonatOutcome> out;
    n.run_autonat([&](dht::AutonatOutcome a) { out = a; });
    REQUIRE(fixture::run_until(*s, [&] { return out.has_value(); }));
    CHECK(out->probes == 8);
    CHECK(out->successes == 8);
    CHECK(out->role == dht::DhtRole::server);
  }
}
