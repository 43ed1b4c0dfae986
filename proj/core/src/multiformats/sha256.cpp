// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/multiformats/sha256.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace ipfsim::mf {

Sha256Digest sha256(ByteView data) {
  Sha256Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw std::runtime_error("EVP_Digest(sha256) failed");
  }
  return out;
}

}  // namespace ipfsim::mf
