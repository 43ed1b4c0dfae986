// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/kaddht/lookup.hpp"
#include "ipfsim/kaddht/routing_table.hpp"
#include "support/sim_fixture.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace ipfsim;

namespace {

mf::DhtKey random_key(std::mt19937_64& rng) {
  mf::DhtKey k;
  for (auto& b : k.bits) b = static_cast<std::uint8_t>(rng());
  return k;
}

dht::RoutingTable filled_table(std::size_t peers) {
  std::mt19937_64 rng(1);
  dht::RoutingTable table(random_key(rng));
  for (std::size_t i = 0; i < peers; ++i) {
    Bytes pk(32);
    for (auto& b : pk) b = static_cast<std::uint8_t>(rng());
    dht::PeerInfo p{mf::PeerId::from_public_key(pk).value(), {}};
    (void)table.insert(p, dht::DhtRole::server, VTime{});
  }
  return table;
}

void BM_TableInsert(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(filled_table(static_cast<std::size_t>(state.range(0))).size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TableInsert)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_TableClosest(benchmark::State& state) {
  const auto table = filled_table(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(table.closest(random_key(rng), 20));
}
BENCHMARK(BM_TableClosest)->Arg(200)->Arg(5000);

void BM_IterativeLookup(benchmark::State& state) {
  auto s = fixture::make_static(static_cast<std::size_t>(state.range(0)), 3);
  std::mt19937_64 rng(3);
  auto& n = s.node(s.servers[0]);
  for (auto _ : state) {
    bool done = false;
    dht::iterative_find_peers(n.dht_network(), n.dht(), random_key(rng), [&](auto) { done = true; });
    fixture::run_until(*s, [&] { return done; });
  }
}
BENCHMARK(BM_IterativeLookup)->Arg(1000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
