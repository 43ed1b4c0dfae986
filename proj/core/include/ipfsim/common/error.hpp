// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/outcome.hpp>

#include <string>
#include <system_error>

namespace ipfsim {

namespace outcome = BOOST_OUTCOME_V2_NAMESPACE;

enum class Errc {
  // multiformats
  unsupported_base = 1,
  unknown_multibase_prefix,
  invalid_base_character,
  malformed_varint,
  digest_length_mismatch,
  trailing_bytes,
  truncated_input,
  unsupported_hash,
  invalid_cid_version,
  invalid_v0_cid,
  empty_input,
  unknown_protocol,
  invalid_protocol_value,
  empty_component,
  missing_leading_slash,
  empty_public_key,
  // dht
  equal_keys,
  insert_self,
  insert_client,
  no_reachable_peers,
  not_found,
  cannot_provide,
  malformed_message,
  // merkledag
  verification_failed,
  missing_block,
  malformed_node,
  // node
  all_dials_failed,
  zero_denominator,
  // simnet / analysis
  invalid_config,
  empty_window,
  // gateway
  bad_request,
};

const std::error_category& error_category() noexcept;

inline std::error_code make_error_code(Errc e) noexcept {
  return {static_cast<int>(e), error_category()};
}

template <typename T>
using Result = outcome::result<T, std::error_code>;

using Status = outcome::result<void, std::error_code>;

}  // namespace ipfsim

template <>
struct std::is_error_code_enum<ipfsim::Errc> : std::true_type {};
