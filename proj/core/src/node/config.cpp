// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/node/config.hpp"

namespace ipfsim::node {

Status NodeConfig::validate() const {
  const bool ok = chunk_size > 0 && fanout >= 2 && dht.k >= 1 && dht.alpha >= 1 &&
                  dht.provider_ttl > Duration::zero() &&
                  dht.republish_interval > Duration::zero() &&
                  bitswap.fallback_timeout > Duration::zero() &&
                  cache_ttl > Duration::zero() && address_book_capacity > 0 &&
                  dht.addrs_with_records_probability >= 0.0 &&
                  dht.addrs_with_records_probability <= 1.0;
  if (!ok) return Errc::invalid_config;
  return outcome::success();
}

}  // namespace ipfsim::node
