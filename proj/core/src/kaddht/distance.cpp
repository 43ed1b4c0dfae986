// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/kaddht/distance.hpp"

#include <bit>

namespace ipfsim::dht {

int highest_set_bit(const Distance& d) {
  for (std::size_t i = 0; i < d.bits.size(); ++i) {
    if (d.bits[i] != 0) {
      const int top = 7 - std::countl_zero(d.bits[i]);
      return static_cast<int>((d.bits.size() - 1 - i) * 8) + top;
    }
  }
  return -1;
}

Result<int> bucket_index(const DhtKey& self, const DhtKey& other) {
  const int bit = highest_set_bit(xor_distance(self, other));
  if (bit < 0) return Errc::equal_keys;
  return bit;
}

}  // namespace ipfsim::dht
