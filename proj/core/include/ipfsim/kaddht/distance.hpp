// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/error.hpp"
#include "ipfsim/multiformats/dht_key.hpp"

namespace ipfsim::dht {

using mf::DhtKey;

/// XOR distance; compares as a big-endian 256-bit integer.
using Distance = mf::DhtKey;

inline constexpr int kKeyBits = 256;

inline Distance xor_distance(const DhtKey& a, const DhtKey& b) { return a ^ b; }

/// Index of the highest set bit (255 = MSB of byte 0), or -1 for zero.
int highest_set_bit(const Distance& d);

/// Bucket holding `other` in the table of `self`: i such that
/// 2^i <= d < 2^(i+1) for d = self ^ other.
Result<int> bucket_index(const DhtKey& self, const DhtKey& other);

}  // namespace ipfsim::dht
