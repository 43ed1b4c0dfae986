// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/multiformats/multibase.hpp"

#include <algorithm>
#include <array>

namespace ipfsim::mf {
namespace {

constexpr std::string_view kBase32Alphabet = "abcdefghijklmnopqrstuvwxyz234567";
constexpr std::string_view kBase58Alphabet =
    "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

constexpr std::array<int, 256> reverse_table(std::string_view alphabet) {
  std::array<int, 256> table{};
  for (auto& v : table) v = -1;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    table[static_cast<unsigned char>(alphabet[i])] = static_cast<int>(i);
  return table;
}

constexpr auto kBase32Reverse = reverse_table(kBase32Alphabet);
constexpr auto kBase58Reverse = reverse_table(kBase58Alphabet);

}  // namespace

Result<Multibase> multibase_from_prefix(char prefix) {
  switch (prefix) {
    case 'b': return Multibase::base32;
    case 'z': return Multibase::base58btc;
    default: return Errc::unknown_multibase_prefix;
  }
}

std::string base32_encode(ByteView data) {
  std::string out;
  out.reserve((data.size() * 8 + 4) / 5);
  std::uint32_t buffer = 0;
  int bits = 0;
  for (auto b : data) {
    buffer = (buffer << 8) | b;
    bits += 8;
    while (bits >= 5) {
      out.push_back(kBase32Alphabet[(buffer >> (bits - 5)) & 0x1f]);
      bits -= 5;
    }
  }
  if (bits > 0) out.push_back(kBase32Alphabet[(buffer << (5 - bits)) & 0x1f]);
  return out;
}

Result<Bytes> base32_decode(std::string_view text) {
  Bytes out;
  out.reserve(text.size() * 5 / 8);
  std::uint32_t buffer = 0;
  int bits = 0;
  for (char c : text) {
    const int v = kBase32Reverse[static_cast<unsigned char>(c)];
    if (v < 0) return Errc::invalid_base_character;
    buffer = (buffer << 5) | static_cast<std::uint32_t>(v);
    bits += 5;
    if (bits >= 8) {
      out.push_back(static_cast<std::uint8_t>(buffer >> (bits - 8)));
      bits -= 8;
    }
  }
  // Unpadded input may leave at most 4 zero bits behind.
  if (bits >= 5 || (buffer & ((1u << bits) - 1)) != 0) return Errc::invalid_base_character;
  return out;
}

std::string base58btc_encode(ByteView data) {
  const auto zeros = static_cast<std::size_t>(
      std::find_if(data.begin(), data.end(), [](auto b) { return b != 0; }) - data.begin());
  // log(256) / log(58) ~ 1.366
  std::vector<std::uint8_t> digits((data.size() - zeros) * 138 / 100 + 1, 0);
  std::size_t length = 0;
  for (std::size_t i = zeros; i < data.size(); ++i) {
    int carry = data[i];
    std::size_t j = 0;
    for (auto it = digits.rbegin(); (carry != 0 || j < length) && it != digits.rend(); ++it, ++j) {
      carry += 256 * (*it);
      *it = static_cast<std::uint8_t>(carry % 58);
      carry /= 58;
    }
    length = j;
  }
  auto it = digits.begin() + static_cast<std::ptrdiff_t>(digits.size() - length);
  while (it != digits.end() && *it == 0) ++it;
  std::string out(zeros, '1');
  for (; it != digits.end(); ++it) out.push_back(kBase58Alphabet[*it]);
  return out;
}

Result<Bytes> base58btc_decode(std::string_view text) {
  std::size_t zeros = 0;
  while (zeros < text.size() && text[zeros] == '1') ++zeros;
  // log(58) / log(256) ~ 0.733
  std::vector<std::uint8_t> b256((text.size() - zeros) * 733 / 1000 + 1, 0);
  std::size_t length = 0;
  for (std::size_t i = zeros; i < text.size(); ++i) {
    int carry = kBase58Reverse[static_cast<unsigned char>(text[i])];
    if (carry < 0) return Errc::invalid_base_character;
    std::size_t j = 0;
    for (auto it = b256.rbegin(); (carry != 0 || j < length) && it != b256.rend(); ++it, ++j) {
      carry += 58 * (*it);
      *it = static_cast<std::uint8_t>(carry % 256);
      carry /= 256;
    }
    length = j;
  }
  auto it = b256.begin() + static_cast<std::ptrdiff_t>(b256.size() - length);
  while (it != b256.end() && *it == 0) ++it;
  Bytes out(zeros, 0);
  out.insert(out.end(), it, b256.end());
  return out;
}

std::string multibase_encode(Multibase base, ByteView data) {
  std::string out(1, static_cast<char>(base));
  out += base == Multibase::base32 ? base32_encode(data) : base58btc_encode(data);
  return out;
}

Result<Bytes> multibase_decode(std::string_view text) {
  if (text.empty()) return Errc::empty_input;
  auto base = multibase_from_prefix(text.front());
  if (!base) return base.error();
  text.remove_prefix(1);
  return base.value() == Multibase::base32 ? base32_decode(text) : base58btc_decode(text);
}

}  // namespace ipfsim::mf
