// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/multiformats/multiaddr.hpp"

#include "ipfsim/multiformats/peer_id.hpp"

#include <arpa/inet.h>

#include <array>
#include <charconv>

namespace ipfsim::mf {
namespace {

struct ProtocolInfo {
  Protocol protocol;
  std::string_view name;
  bool has_value;
};

constexpr std::array<ProtocolInfo, 7> kProtocols{{
    {Protocol::ip4, "ip4", true},
    {Protocol::ip6, "ip6", true},
    {Protocol::tcp, "tcp", true},
    {Protocol::udp, "udp", true},
    {Protocol::quic, "quic", false},
    {Protocol::ws, "ws", false},
    {Protocol::p2p, "p2p", true},
}};

const ProtocolInfo* lookup(std::string_view name) {
  for (const auto& p : kProtocols)
    if (p.name == name) return &p;
  return nullptr;
}

bool parse_decimal(std::string_view s, unsigned max, unsigned& out) {
  if (s.empty() || s.size() > 5) return false;
  if (s.size() > 1 && s.front() == '0') return false;  // canonical form only
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && out <= max;
}

Result<std::string> canonical_ip4(std::string_view s) {
  std::size_t start = 0;
  for (int octet = 0; octet < 4; ++octet) {
    const auto dot = s.find('.', start);
    const bool last = octet == 3;
    if (last != (dot == std::string_view::npos)) return Errc::invalid_protocol_value;
    const auto part = s.substr(start, last ? std::string_view::npos : dot - start);
    unsigned v = 0;
    if (part.size() > 3 || !parse_decimal(part, 255, v)) return Errc::invalid_protocol_value;
    start = dot + 1;
  }
  return std::string(s);
}

Result<std::string> canonical_ip6(std::string_view s) {
  const std::string input(s);
  in6_addr addr{};
  if (inet_pton(AF_INET6, input.c_str(), &addr) != 1) return Errc::invalid_protocol_value;
  std::array<char, INET6_ADDRSTRLEN> buf{};
  if (inet_ntop(AF_INET6, &addr, buf.data(), buf.size()) == nullptr)
    return Errc::invalid_protocol_value;
  return std::string(buf.data());
}

Result<std::string> canonical_value(Protocol p, std::string_view value) {
  switch (p) {
    case Protocol::ip4: return canonical_ip4(value);
    case Protocol::ip6: return canonical_ip6(value);
    case Protocol::tcp:
    case Protocol::udp: {
      unsigned port = 0;
      if (!parse_decimal(value, 65535, port)) return Errc::invalid_protocol_value;
      return std::string(value);
    }
    case Protocol::p2p: {
      auto peer = PeerId::parse(value);
      if (!peer) return Errc::invalid_protocol_value;
      return peer.value().str();
    }
    case Protocol::quic:
    case Protocol::ws: return std::string{};
  }
  return Errc::unknown_protocol;
}

}  // namespace

std::string_view protocol_name(Protocol p) {
  for (const auto& info : kProtocols)
    if (info.protocol == p) return info.name;
  return "?";
}

bool protocol_has_value(Protocol p) {
  for (const auto& info : kProtocols)
    if (info.protocol == p) return info.has_value;
  return false;
}

Result<Multiaddr> Multiaddr::parse(std::string_view text) {
  if (text.empty() || text.front() != '/') return Errc::missing_leading_slash;
  Multiaddr out;
  std::size_t pos = 1;
  auto next_token = [&](std::string_view& token) -> bool {
    if (pos > text.size()) return false;
    const auto slash = text.find('/', pos);
    token = text.substr(pos, slash == std::string_view::npos ? std::string_view::npos : slash - pos);
    pos = slash == std::string_view::npos ? text.size() + 1 : slash + 1;
    return true;
  };
  std::string_view name;
  while (next_token(name)) {
    if (name.empty()) return Errc::empty_component;
    const auto* info = lookup(name);
    if (info == nullptr) return Errc::unknown_protocol;
    MultiaddrComponent component{info->protocol, {}};
    if (info->has_value) {
      std::string_view value;
      if (!next_token(value) || value.empty()) return Errc::invalid_protocol_value;
      auto canonical = canonical_value(info->protocol, value);
      if (!canonical) return canonical.error();
      component.value = std::move(canonical).value();
    }
    out.components_.push_back(std::move(component));
  }
  return out;
}

std::string Multiaddr::str() const {
  std::string out;
  for (const auto& c : components_) {
    out += '/';
    out += protocol_name(c.protocol);
    if (protocol_has_value(c.protocol)) {
      out += '/';
      out += c.value;
    }
  }
  return out;
}

Result<Multiaddr> parse_multiaddr(std::string_view text) { return Multiaddr::parse(text); }

}  // namespace ipfsim::mf
