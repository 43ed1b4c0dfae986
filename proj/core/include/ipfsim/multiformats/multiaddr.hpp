// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/error.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ipfsim::mf {

enum class Protocol { ip4, ip6, tcp, udp, quic, ws, p2p };

std::string_view protocol_name(Protocol p);
bool protocol_has_value(Protocol p);

struct MultiaddrComponent {
  Protocol protocol;
  std::string value;  // canonical text; empty for valueless protocols

  friend auto operator<=>(const MultiaddrComponent&, const MultiaddrComponent&) = default;
};

/// Layered endpoint descriptor such as /ip4/1.2.3.4/tcp/3333/p2p/Qm...
class Multiaddr {
 public:
  Multiaddr() = default;

  static Result<Multiaddr> parse(std::string_view text);

  const std::vector<MultiaddrComponent>& components() const { return components_; }
  std::string str() const;

  friend auto operator<=>(const Multiaddr&, const Multiaddr&) = default;

 private:
  std::vector<MultiaddrComponent> components_;
};

Result<Multiaddr> parse_multiaddr(std::string_view text);

}  // namespace ipfsim::mf
