// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/kaddht/autonat.hpp"
#include "ipfsim/kaddht/distance.hpp"
#include "ipfsim/kaddht/lookup.hpp"
#include "ipfsim/kaddht/messages.hpp"
#include "ipfsim/kaddht/provide.hpp"
#include "ipfsim/kaddht/routing_table.hpp"
#include "ipfsim/kaddht/server.hpp"
#include "support/oracles.hpp"
#include "support/sim_fixture.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace ipfsim;
using namespace ipfsim::dht;
using fixture::to_digest;

namespace {

PeerInfo make_peer(std::uint64_t n) {
  Bytes key(16);
  for (int i = 0; i < 8; ++i) key[i] = static_cast<std::uint8_t>(n >> (8 * i));
  key[8] = 0x5a;
  PeerInfo p;
  p.id = PeerId::from_public_key(key).value();
  p.addrs.push_back(mf::Multiaddr::parse("/ip4/10.0.0." + std::to_string(n % 250 + 1) + "/tcp/4001").value());
  return p;
}

DhtKey random_key(std::mt19937_64& rng) {
  DhtKey k;
  for (auto& b : k.bits) b = static_cast<std::uint8_t>(rng());
  return k;
}

// Peers whose reference key lands in bucket `bucket` of `self`.
std::vector<PeerInfo> peers_in_bucket(const DhtKey& self, int bucket, std::size_t count,
                                      std::uint64_t start = 1000) {
  std::vector<PeerInfo> out;
  for (std::uint64_t n = start; out.size() < count; ++n) {
    auto p = make_peer(n);
    auto d = to_digest(self);
    const auto k = fixture::ref_key(p.id);
    for (int i = 0; i < 32; ++i) d[i] ^= k[i];
    if (oracle::bit_scan(d) == bucket) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_SUITE("distance") {
  TEST_CASE("highest set bit matches a bit-by-bit scan") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20000; ++i) {
      auto k = random_key(rng);
      // Thin out the top bytes so low buckets get exercised.
      const int zeros = static_cast<int>(rng() % 33);
      for (int z = 0; z < zeros; ++z) k.bits[z] = 0;
      CHECK(highest_set_bit(k) == oracle::bit_scan(to_digest(k)));
    }
    CHECK(highest_set_bit(DhtKey{}) == -1);
  }

  TEST_CASE("bucket index") {
    DhtKey a{}, b{};
    b.bits[0] = 0x80;
    CHECK(bucket_index(a, b).value() == 255);
    b = DhtKey{};
    b.bits[31] = 0x01;
    CHECK(bucket_index(a, b).value() == 0);
    b.bits[31] = 0x03;
    CHECK(bucket_index(a, b).value() == 1);
    CHECK(bucket_index(a, a).error() == Errc::equal_keys);

    std::mt19937_64 rng(2);
    for (int i = 0; i < 5000; ++i) {
      auto x = random_key(rng), y = random_key(rng);
      auto d = to_digest(x);
      const auto dy = to_digest(y);
      for (int j = 0; j < 32; ++j) d[j] ^= dy[j];
      CHECK(bucket_index(x, y).value() == oracle::bit_scan(d));
      CHECK(bucket_index(x, y).value() == bucket_index(y, x).value());
    }
  }

  TEST_CASE("peer keys use the reference hash") {
    for (std::uint64_t n = 0; n < 200; ++n) {
      const auto p = make_peer(n);
      CHECK(to_digest(mf::dht_key(p.id)) == fixture::ref_key(p.id));
    }
  }
}

TEST_SUITE("routing table") {
  TEST_CASE("rejects self and clients") {
    const auto self = make_peer(1);
    RoutingTable t(mf::dht_key(self.id));
    CHECK(t.insert(self, DhtRole::server, 0ns).error() == Errc::insert_self);
    CHECK(t.insert(make_peer(2), DhtRole::client, 0ns).error() == Errc::insert_client);
    CHECK(t.size() == 0);
  }

  TEST_CASE("full bucket keeps live residents") {
    const auto self = make_peer(1);
    const auto key = mf::dht_key(self.id);
    RoutingTable t(key);
    auto peers = peers_in_bucket(key, 255, 21);
    for (std::size_t i = 0; i < 20; ++i) {
      auto r = t.insert(peers[i], DhtRole::server, VTime{std::chrono::seconds(i)});
      REQUIRE(r);
      CHECK(r.value().outcome == InsertOutcome::inserted);
    }
    CHECK(t.bucket(255).size() == 20);

    auto alive = [](const PeerId&) { return true; };
    auto r = t.insert(peers[20], DhtRole::server, 100s, alive);
    REQUIRE(r);
    CHECK(r.value().outcome == InsertOutcome::rejected_full);
    CHECK_FALSE(t.contains(peers[20].id));
    CHECK(t.size() == 20);
  }

  TEST_CASE("dead least-recently-seen entry is replaced") {
    const auto self = make_peer(1);
    const auto key = mf::dht_key(self.id);
    RoutingTable t(key);
    auto peers = peers_in_bucket(key, 255, 21);
    for (std::size_t i = 0; i < 20; ++i)
      REQUIRE(t.insert(peers[i], DhtRole::server, VTime{std::chrono::seconds(i)}));

    // Touch peer 0 so peer 1 becomes the least recently seen.
    auto refreshed = t.insert(peers[0], DhtRole::server, 50s);
    REQUIRE(refreshed);
    CHECK(refreshed.value().outcome == InsertOutcome::refreshed);
    CHECK(t.bucket(255).entries().back().peer.id == peers[0].id);

    std::set<PeerId> probed;
    auto dead = [&](const PeerId& p) {
      probed.insert(p);
      return false;
    };
    auto r = t.insert(peers[20], DhtRole::server, 100s, dead);
    REQUIRE(r);
    CHECK(r.value().outcome == InsertOutcome::inserted);
    REQUIRE(r.value().evicted.has_value());
    CHECK(*r.value().evicted == peers[1].id);
    CHECK(probed == std::set<PeerId>{peers[1].id});
    CHECK_FALSE(t.contains(peers[1].id));
    CHECK(t.contains(peers[20].id));
    CHECK(t.size() == 20);
  }

  TEST_CASE("entries land in their XOR bucket") {
    const auto self = make_peer(1);
    const auto key = mf::dht_key(self.id);
    RoutingTable t(key, 1000);
    for (std::uint64_t n = 2; n < 600; ++n) REQUIRE(t.insert(make_peer(n), DhtRole::server, 0ns));
    std::size_t total = 0;
    for (int b = 0; b < 256; ++b) {
      for (const auto& e : t.bucket(b).entries()) {
        auto d = to_digest(key);
        const auto k = fixture::ref_key(e.peer.id);
        for (int i = 0; i < 32; ++i) d[i] ^= k[i];
        CHECK(oracle::bit_scan(d) == b);
      }
      total += t.bucket(b).size();
    }
    CHECK(total == t.size());
    CHECK(t.size() == 598);
  }

  TEST_CASE("closest agrees with a brute-force sort") {
    const auto self = make_peer(1);
    RoutingTable t(mf::dht_key(self.id), 1000);
    std::vector<PeerInfo> peers;
    std::vector<oracle::Digest> keys;
    for (std::uint64_t n = 2; n < 500; ++n) {
      peers.push_back(make_peer(n));
      keys.push_back(fixture::ref_key(peers.back().id));
      REQUIRE(t.insert(peers.back(), DhtRole::server, 0ns));
    }
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const auto target = random_key(rng);
      const std::size_t count = 1 + rng() % 30;
      const auto got = t.closest(target, count);
      const auto want = oracle::closest(keys, to_digest(target), count);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].peer.id == peers[want[i]].id);
    }
  }

  TEST_CASE("remove") {
    const auto self = make_peer(1);
    RoutingTable t(mf::dht_key(self.id));
    const auto p = make_peer(9);
    REQUIRE(t.insert(p, DhtRole::server, 0ns));
    CHECK(t.remove(p.id));
    CHECK_FALSE(t.remove(p.id));
    CHECK(t.size() == 0);
    CHECK(t.find(p.id) == nullptr);
  }
}

TEST_SUITE("messages") {
  TEST_CASE("hand-assembled FIND_NODE") {
    FindNode m;
    m.origin.server = true;
    m.target.bits.fill(0xab);
    Bytes want{35, 0x01, 0x01, 0x00};
    want.insert(want.end(), 32, 0xab);
    CHECK(encode(m) == want);
    auto back = decode(want);
    REQUIRE(back);
    CHECK(std::get<FindNode>(back.value()) == m);
  }

  TEST_CASE("hand-assembled DIAL_BACK reply and DUMP_BUCKETS") {
    CHECK(encode(DialBackReply{true}) == Bytes{0x02, 0x17, 0x01});
    CHECK(encode(DialBackReply{false}) == Bytes{0x02, 0x17, 0x00});

    DumpBuckets d;
    d.origin.addrs.push_back(mf::Multiaddr::parse("/ip4/1.2.3.4/tcp/1").value());
    const std::string a = "/ip4/1.2.3.4/tcp/1";
    Bytes want{static_cast<std::uint8_t>(1 + 1 + 1 + 1 + a.size()), 0x06, 0x00, 0x01,
               static_cast<std::uint8_t>(a.size())};
    want.insert(want.end(), a.begin(), a.end());
    CHECK(encode(d) == want);
  }

  TEST_CASE("hand-assembled PEERS reply") {
    const auto p = make_peer(7);
    PeersReply m{{PeerInfo{p.id, {}}}};
    const Bytes id = p.id.to_bytes();
    REQUIRE(id.size() == 34);
    Bytes body{0x01, 34};
    body.insert(body.end(), id.begin(), id.end());
    body.push_back(0x00);
    Bytes want{static_cast<std::uint8_t>(body.size() + 1), 0x11};
    want.insert(want.end(), body.begin(), body.end());
    CHECK(encode(m) == want);
  }

  TEST_CASE("every message round-trips") {
    const auto p = make_peer(3), q = make_peer(4);
    Origin o{true, p.addrs};
    DhtKey k;
    k.bits.fill(0x42);
    std::vector<Message> all{
        FindNode{o, k},
        GetProviders{Origin{false, {}}, k},
        AddProvider{o, k, p},
        FindPeer{o, q.id},
        PutPeerRecord{o, p},
        DumpBuckets{o},
        DialBack{o},
        PeersReply{{p, q}},
        ProvidersReply{{PeerInfo{p.id, {}}}, {q}},
        FindPeerReply{p, {}},
        FindPeerReply{std::nullopt, {p, q}},
        DialBackReply{true},
    };
    std::set<std::uint8_t> tags;
    for (const auto& m : all) {
      const auto bytes = encode(m);
      auto back = decode(bytes);
      REQUIRE(back);
      CHECK(back.value() == m);
      CHECK(bytes[1] == message_tag(m));
      tags.insert(message_tag(m));
    }
    CHECK(tags == std::set<std::uint8_t>{0x01, 0x02, 0x03, 0x04, 0x05, 0x06, 0x07, 0x11, 0x12,
                                         0x13, 0x17});
  }

  TEST_CASE("malformed frames") {
    FindNode m;
    auto bytes = encode(m);
    auto truncated = bytes;
    truncated.pop_back();
    CHECK_FALSE(decode(truncated));
    auto trailing = bytes;
    trailing.push_back(0);
    CHECK_FALSE(decode(trailing));
    CHECK_FALSE(decode(Bytes{}));
    CHECK_FALSE(decode(Bytes{0x01, 0x7f}));  // unknown tag
    CHECK_FALSE(decode(Bytes{0x00}));

    std::mt19937_64 rng(5);
    for (int i = 0; i < 20000; ++i) {
      Bytes junk(rng() % 64);
      for (auto& b : junk) b = static_cast<std::uint8_t>(rng());
      (void)decode(junk);  // must not crash
    }
  }
}

TEST_SUITE("rpc handler") {
  TEST_CASE("FIND_NODE answers closest peers without the requester") {
    const auto self = make_peer(1);
    DhtServer s(self, DhtRole::server);
    std::vector<PeerInfo> peers;
    std::vector<oracle::Digest> keys;
    for (std::uint64_t n = 2; n < 40; ++n) {
      auto p = make_peer(n);
      auto r = s.table().insert(p, DhtRole::server, 0ns);
      REQUIRE(r);
      if (r.value().outcome != InsertOutcome::inserted) continue;  // bucket full
      peers.push_back(p);
      keys.push_back(fixture::ref_key(p.id));
    }
    REQUIRE(peers.size() > 21);
    DhtKey target;
    target.bits.fill(0x11);
    auto reply = s.handle_rpc(peers[0].id, FindNode{Origin{true, peers[0].addrs}, target}, 1s);
    REQUIRE(reply);
    const auto& closer = std::get<PeersReply>(*reply).closer;
    CHECK(closer.size() == 20);
    const auto want = oracle::closest(keys, to_digest(target), 21);
    std::size_t j = 0;
    for (auto idx : want) {
      if (idx == 0) continue;
      if (j == closer.size()) break;
      CHECK(closer[j++].id == peers[idx].id);
    }
  }

  TEST_CASE("server origins join the table, client origins do not") {
    DhtServer s(make_peer(1), DhtRole::server);
    const auto server = make_peer(2), client = make_peer(3);
    DhtKey k{};
    s.handle_rpc(server.id, FindNode{Origin{true, server.addrs}, k}, 0ns);
    s.handle_rpc(client.id, FindNode{Origin{false, client.addrs}, k}, 0ns);
    CHECK(s.table().contains(server.id));
    CHECK_FALSE(s.table().contains(client.id));
  }

  TEST_CASE("provider records") {
    DhtServer s(make_peer(1), DhtRole::server);
    const auto prov = make_peer(2), other = make_peer(3);
    REQUIRE(s.table().insert(other, DhtRole::server, 0ns));
    DhtKey k;
    k.bits.fill(7);

    // Nothing stored yet: only closer peers.
    auto r0 = s.handle_rpc(other.id, GetProviders{Origin{}, k}, 0ns);
    CHECK(std::get<ProvidersReply>(*r0).providers.empty());

    // Announcing on behalf of somebody else is ignored.
    CHECK_FALSE(s.handle_rpc(other.id, AddProvider{Origin{}, k, prov}, 0ns));
    CHECK(s.providers().record_count() == 0);

    CHECK_FALSE(s.handle_rpc(prov.id, AddProvider{Origin{}, k, prov}, 0ns));
    CHECK(s.providers().record_count() == 1);
    auto r1 = s.handle_rpc(other.id, GetProviders{Origin{}, k}, 1s);
    const auto& pr = std::get<ProvidersReply>(*r1);
    REQUIRE(pr.providers.size() == 1);
    CHECK(pr.providers[0].id == prov.id);
    CHECK(pr.providers[0].addrs.empty());  // addresses are not kept by default
    CHECK(pr.closer.empty());
  }

  TEST_CASE("FIND_PEER and peer records") {
    const auto self = make_peer(1), subject = make_peer(2), asker = make_peer(3);
    DhtServer s(self, DhtRole::server);
    auto me = s.handle_rpc(asker.id, FindPeer{Origin{}, self.id}, 0ns);
    CHECK(std::get<FindPeerReply>(*me).record == self);

    auto miss = s.handle_rpc(asker.id, FindPeer{Origin{}, subject.id}, 0ns);
    CHECK_FALSE(std::get<FindPeerReply>(*miss).record);

    // Only the subject may publish its own record.
    s.handle_rpc(asker.id, PutPeerRecord{Origin{}, subject}, 0ns);
    CHECK(s.peer_records().size() == 0);
    s.handle_rpc(subject.id, PutPeerRecord{Origin{}, subject}, 0ns);
    auto hit = s.handle_rpc(asker.id, FindPeer{Origin{}, subject.id}, 0ns);
    CHECK(std::get<FindPeerReply>(*hit).record == subject);
  }

  TEST_CASE("byte entry point rejects replies and junk") {
    DhtServer s(make_peer(1), DhtRole::server);
    const auto from = make_peer(2).id;
    CHECK_FALSE(s.handle_rpc_bytes(from, encode(DialBackReply{true}), 0ns));
    CHECK_FALSE(s.handle_rpc_bytes(from, Bytes{0x05, 0x01}, 0ns));
    auto ok = s.handle_rpc_bytes(from, encode(FindNode{}), 0ns);
    REQUIRE(ok);
    REQUIRE(ok.value());
    CHECK(std::holds_alternative<PeersReply>(decode(*ok.value()).value()));
  }

  TEST_CASE("DUMP_BUCKETS returns the whole table") {
    DhtServer s(make_peer(1), DhtRole::server, DhtConfig{}, 0);
    for (std::uint64_t n = 2; n < 30; ++n) REQUIRE(s.table().insert(make_peer(n), DhtRole::server, 0ns));
    auto r = s.handle_rpc(make_peer(99).id, DumpBuckets{}, 0ns);
    CHECK(std::get<PeersReply>(*r).closer.size() == s.table().size());
  }
}

TEST_SUITE("records") {
  TEST_CASE("provider record lifetime") {
    ProviderStore store;
    DhtKey k;
    k.bits.fill(1);
    const auto p = make_peer(1).id;
    store.add(k, p, 0ns);
    CHECK(store.get(k, std::chrono::hours(23)).size() == 1);
    CHECK(store.get(k, std::chrono::hours(24) - 1ns).size() == 1);
    CHECK(store.get(k, std::chrono::hours(24)).empty());
    CHECK(store.get(k, std::chrono::hours(25)).empty());
    CHECK(store.record_count() == 1);
    CHECK(store.expire(std::chrono::hours(24) - 1ns) == 0);
    CHECK(store.expire(std::chrono::hours(24)) == 1);
    CHECK(store.record_count() == 0);
    CHECK(store.byte_count() == 0);
  }

  TEST_CASE("refresh extends, reads do not") {
    ProviderStore store;
    DhtKey k{};
    const auto p = make_peer(1).id, q = make_peer(2).id;
    store.add(k, p, 0ns);
    for (int h = 0; h < 24; ++h) (void)store.get(k, std::chrono::hours(h));
    CHECK(store.get(k, std::chrono::hours(24)).empty());

    store.add(k, p, std::chrono::hours(20));
    store.add(k, q, std::chrono::hours(21));
    CHECK(store.record_count() == 2);
    CHECK(store.get(k, std::chrono::hours(44) + 30min).size() == 1);
    CHECK(store.get(k, std::chrono::hours(45)).empty());
  }

  TEST_CASE("republish tracker") {
    RepublishTracker t;
    const auto a = mf::Cid::v1(mf::codec::kRaw, mf::multihash_sha256(to_bytes("a")));
    const auto b = mf::Cid::v1(mf::codec::kRaw, mf::multihash_sha256(to_bytes("b")));
    t.provided(a, 0ns);
    t.provided(b, std::chrono::hours(1));
    CHECK(t.due(std::chrono::hours(12) - 1ns).empty());
    CHECK(t.due(std::chrono::hours(12)) == std::vector<mf::Cid>{a});
    CHECK(t.due(std::chrono::hours(13)).size() == 2);
    t.forget(a);
    CHECK(t.size() == 1);
  }

  TEST_CASE("autonat threshold") {
    CHECK(autonat_decide(0) == DhtRole::client);
    CHECK(autonat_decide(3) == DhtRole::client);
    CHECK(autonat_decide(4) == DhtRole::server);
    CHECK(autonat_decide(8) == DhtRole::server);
  }
}

TEST_SUITE("walks") {
  std::vector<oracle::Digest> server_keys(fixture::StaticNet& s) {
    std::vector<oracle::Digest> keys;
    for (auto h : s.servers) keys.push_back(fixture::ref_key(s.net->host(h).id()));
    return keys;
  }

  TEST_CASE("find_peers on a small converged network") {
    auto s = fixture::make_static(20, 4);
    auto keys = server_keys(s);
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 10; ++trial) {
      const auto target = random_key(rng);
      auto& n = s.node(s.servers[0]);
      std::optional<LookupResult> got;
      iterative_find_peers(n.dht_network(), n.dht(), target,
                           [&](Result<LookupResult> r) { got = r.value(); });
      REQUIRE(fixture::run_until(*s, [&] { return got.has_value(); }));
      // Everyone but the requester.
      CHECK(got->closest.size() == 19);
      std::set<PeerId> ids;
      for (const auto& p : got->closest) ids.insert(p.id);
      CHECK_FALSE(ids.count(s.net->host(s.servers[0]).id()));
      CHECK(got->finished >= got->started);
    }
  }

  TEST_CASE("walk from a client matches the oracle and trace is monotone") {
    fixture::StaticOptions o;
    o.servers = 300;
    o.clients = 1;
    o.seed = 9;
    auto s = fixture::make_static(o);
    auto keys = server_keys(s);
    std::mt19937_64 rng(7);
    auto& n = s.node(s.clients[0]);
    for (int trial = 0; trial < 20; ++trial) {
      const auto target = random_key(rng);
      std::optional<LookupResult> got;
      iterative_find_peers(n.dht_network(), n.dht(), target,
                           [&](Result<LookupResult> r) { got = r.value(); });
      REQUIRE(fixture::run_until(*s, [&] { return got.has_value(); }));
      const auto want = oracle::closest(keys, to_digest(target), 20);
      REQUIRE(got->closest.size() == 20);
      for (std::size_t i = 0; i < 20; ++i)
        CHECK(got->closest[i].id == s.net->host(s.servers[want[i]]).id());
      for (std::size_t i = 1; i < got->best_distance_trace.size(); ++i)
        CHECK(got->best_distance_trace[i] <= got->best_distance_trace[i - 1]);
      CHECK(got->rounds >= 1);
      CHECK(got->queried >= 20);
    }
    // Client requests never put the client into a server's table.
    for (auto h : s.servers) CHECK_FALSE(s.node(h).dht().table().contains(s.net->host(s.clients[0]).id()));
  }

  TEST_CASE("provide stores at the oracle's closest servers") {
    auto s = fixture::make_static(200, 12);
    auto keys = server_keys(s);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
      const auto publisher = s.servers[rng() % s.servers.size()];
      const auto target = random_key(rng);
      auto& n = s.node(publisher);
      std::optional<ProvideReport> rep;
      provide(n.dht_network(), n.dht(), target, [&](Result<ProvideReport> r) { rep = r.value(); });
      REQUIRE(fixture::run_until(*s, [&] { return rep.has_value(); }));

      std::set<PeerId> want;
      for (auto idx : oracle::closest(keys, to_digest(target), 21)) {
        const auto id = s.net->host(s.servers[idx]).id();
        if (id != n.id() && want.size() < 20) want.insert(id);
      }
      CHECK(std::set<PeerId>(rep->stored_at.begin(), rep->stored_at.end()) == want);
      CHECK(rep->total() == rep->walk + rep->rpc_phase);
      // Let the one-way messages land, then check the records exist.
      s->clock().run();
      for (const auto& id : want) {
        auto& holder = s.node(*s.net->index_of(id));
        CHECK(holder.dht().providers().get(target, s.net->now()).size() == 1);
      }
    }
  }

  TEST_CASE("find_providers and find_peer") {
    auto s = fixture::make_static(100, 13);
    auto& pub = s.node(s.servers[5]);
    const auto cid = mf::Cid::v1(mf::codec::kRaw, mf::multihash_sha256(to_bytes("content")));
    std::optional<ProvideReport> rep;
    provide(pub.dht_network(), pub.dht(), mf::dht_key(cid),
            [&](Result<ProvideReport> r) { rep = r.value(); });
    REQUIRE(fixture::run_until(*s, [&] { return rep.has_value(); }));
    s->clock().run();

    auto& asker = s.node(s.servers[50]);
    std::optional<LookupResult> found;
    iterative_find_providers(asker.dht_network(), asker.dht(), cid,
                             [&](Result<LookupResult> r) { found = r.value(); });
    REQUIRE(fixture::run_until(*s, [&] { return found.has_value(); }));
    CHECK(found->found);
    REQUIRE_FALSE(found->providers.empty());
    CHECK(found->providers[0].id == pub.id());

    std::optional<LookupResult> peer;
    iterative_find_peer(asker.dht_network(), asker.dht(), pub.id(),
                        [&](Result<LookupResult> r) { peer = r.value(); });
    REQUIRE(fixture::run_until(*s, [&] { return peer.has_value(); }));
    CHECK(peer->found);
    REQUIRE(peer->peer);
    CHECK(peer->peer->addrs == s.net->host(s.servers[5]).addrs());
  }
}
