// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/merkledag/dag.hpp"
#include "ipfsim/multiformats/cid.hpp"
#include "ipfsim/multiformats/multiaddr.hpp"
#include "ipfsim/multiformats/sha256.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace ipfsim;

namespace {

Bytes random_bytes(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Bytes b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return b;
}

void BM_Sha256(benchmark::State& state) {
  const auto data = random_bytes(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(mf::sha256(data));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sha256)->Arg(64)->Arg(4096)->Arg(262144);

void BM_CidEncode(benchmark::State& state) {
  const auto cid = mf::Cid::v1(mf::codec::kDagPb, mf::multihash_sha256(random_bytes(32, 2)));
  const auto base = state.range(0) ? mf::Multibase::base58btc : mf::Multibase::base32;
  for (auto _ : state) benchmark::DoNotOptimize(mf::encode_cid(cid, base));
}
BENCHMARK(BM_CidEncode)->Arg(0)->Arg(1);

void BM_CidDecode(benchmark::State& state) {
  const auto cid = mf::Cid::v1(mf::codec::kDagPb, mf::multihash_sha256(random_bytes(32, 3)));
  const auto text = mf::encode_cid(cid, state.range(0) ? mf::Multibase::base58btc : mf::Multibase::base32).value();
  for (auto _ : state) benchmark::DoNotOptimize(mf::decode_cid(text));
}
BENCHMARK(BM_CidDecode)->Arg(0)->Arg(1);

void BM_MultiaddrParse(benchmark::State& state) {
  const std::string text = "/ip4/198.51.100.7/udp/4001/quic";
  for (auto _ : state) benchmark::DoNotOptimize(mf::parse_multiaddr(text));
}
BENCHMARK(BM_MultiaddrParse);

void BM_ImportContent(benchmark::State& state) {
  const auto data = random_bytes(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(dag::import_content(data));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ImportContent)->Arg(1 << 20)->Arg(16 << 20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
