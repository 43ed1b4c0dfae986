// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/gateway/lru_cache.hpp"

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <string>
#include <vector>

using namespace ipfsim;

namespace {

void BM_LruMixed(benchmark::State& state) {
  gw::LruCache cache(1 << 20);
  std::vector<std::string> keys;
  for (int i = 0; i < 4096; ++i) keys.push_back("k" + std::to_string(i));
  const auto body = std::make_shared<const Bytes>(1024);
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    const auto& k = keys[rng() % keys.size()];
    if (!cache.get(k)) cache.put(k, body);
  }
}
BENCHMARK(BM_LruMixed)->ThreadRange(1, 8);

}  // namespace

BENCHMARK_MAIN();
