// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/common/error.hpp"

namespace ipfsim {
namespace {

class IpfsimCategory final : public std::error_category {
 public:
  const char* name() const noexcept override { return "ipfsim"; }

  std::string message(int ev) const override {
    switch (static_cast<Errc>(ev)) {
      case Errc::unsupported_base: return "unsupported multibase";
      case Errc::unknown_multibase_prefix: return "unknown multibase prefix";
      case Errc::invalid_base_character: return "invalid character for base encoding";
      case Errc::malformed_varint: return "malformed varint";
      case Errc::digest_length_mismatch: return "multihash digest length mismatch";
      case Errc::trailing_bytes: return "trailing bytes after value";
      case Errc::truncated_input: return "input truncated";
      case Errc::unsupported_hash: return "unsupported hash function";
      case Errc::invalid_cid_version: return "invalid CID version";
      case Errc::invalid_v0_cid: return "CIDv0 requires dag-pb and a 32-byte sha2-256 multihash";
      case Errc::empty_input: return "empty input";
      case Errc::unknown_protocol: return "unknown multiaddr protocol";
      case Errc::invalid_protocol_value: return "invalid value for multiaddr protocol";
      case Errc::empty_component: return "empty multiaddr component";
      case Errc::missing_leading_slash: return "multiaddr must start with '/'";
      case Errc::empty_public_key: return "empty public key";
      case Errc::equal_keys: return "keys are equal";
      case Errc::insert_self: return "cannot insert the local peer into its own routing table";
      case Errc::insert_client: return "DHT clients are never added to routing tables";
      case Errc::no_reachable_peers: return "no reachable peers";
      case Errc::not_found: return "not found";
      case Errc::cannot_provide: return "DHT clients cannot provide content";
      case Errc::malformed_message: return "malformed protocol message";
      case Errc::verification_failed: return "block does not match its CID";
      case Errc::missing_block: return "block not present";
      case Errc::malformed_node: return "malformed DAG node";
      case Errc::all_dials_failed: return "all provider dials failed";
      case Errc::zero_denominator: return "location-addressed time is zero";
      case Errc::invalid_config: return "invalid configuration";
      case Errc::empty_window: return "no observations in window";
      case Errc::bad_request: return "bad request";
    }
    return "unknown ipfsim error";
  }
};

}  // namespace

const std::error_category& error_category() noexcept {
  static const IpfsimCategory category;
  return category;
}

}  // namespace ipfsim
