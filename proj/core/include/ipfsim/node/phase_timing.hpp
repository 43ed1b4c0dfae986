// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/error.hpp"
#include "ipfsim/common/time.hpp"

namespace ipfsim::node {

/// Per-retrieval breakdown. The phases are contiguous, so their sum is the
/// whole retrieval time.
struct PhaseTiming {
  Duration discover{};
  Duration dial{};
  Duration negotiate{};
  Duration fetch{};

  Duration total() const { return discover + dial + negotiate + fetch; }
  /// What a location-addressed (HTTPS-like) fetch would have cost.
  Duration location_addressed() const { return dial + negotiate + fetch; }
};

struct StretchOptions {
  /// Remove the opportunistic Bitswap wait from discovery when it fired.
  bool exclude_bitswap_timeout = false;
  Duration bitswap_timeout = std::chrono::seconds(1);
};

/// (discover + dial + negotiate + fetch) / (dial + negotiate + fetch).
Result<double> compute_stretch(const PhaseTiming& t, StretchOptions options = {});

}  // namespace ipfsim::node
