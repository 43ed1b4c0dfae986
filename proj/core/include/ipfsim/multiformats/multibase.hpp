// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/bytes.hpp"
#include "ipfsim/common/error.hpp"

#include <string>
#include <string_view>

namespace ipfsim::mf {

/// Multibase prefix characters this library can produce and consume.
enum class Multibase : char {
  base32 = 'b',     // RFC 4648 lowercase, no padding
  base58btc = 'z',  // Bitcoin alphabet
};

Result<Multibase> multibase_from_prefix(char prefix);

std::string base32_encode(ByteView data);
Result<Bytes> base32_decode(std::string_view text);

std::string base58btc_encode(ByteView data);
Result<Bytes> base58btc_decode(std::string_view text);

/// Prefix character followed by the base encoding.
std::string multibase_encode(Multibase base, ByteView data);
Result<Bytes> multibase_decode(std::string_view text);

}  // namespace ipfsim::mf
