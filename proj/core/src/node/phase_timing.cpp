// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/node/phase_timing.hpp"

namespace ipfsim::node {

Result<double> compute_stretch(const PhaseTiming& t, StretchOptions options) {
  const Duration denominator = t.location_addressed();
  if (denominator <= Duration::zero()) return Errc::zero_denominator;
  Duration discover = t.discover;
  if (options.exclude_bitswap_timeout && discover >= options.bitswap_timeout)
    discover -= options.bitswap_timeout;
  const Duration numerator = discover + denominator;
  return static_cast<double>(numerator.count()) / static_cast<double>(denominator.count());
}

}  // namespace ipfsim::node
