// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"

#include <array>
#include <cstdint>

namespace ipfsim::mf {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(ByteView data);

}  // namespace ipfsim::mf
