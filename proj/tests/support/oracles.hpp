// SPDX-License-Identifier: Apache-2.0
//
// Test-side reference implementations. None of these call into the library
// code they are used to check.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

// FIPS 180-4 SHA-256, written straight from the standard.
inline Digest sha256(const std::uint8_t* data, std::size_t len) {
  static constexpr std::uint32_t k[64] = {
      0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
      0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
      0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
      0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
      0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
      0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
      0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
      0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
      0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
      0xc67178f2};
  std::uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                        0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  auto rotr = [](std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); };

  Bytes msg(data, data + len);
  const std::uint64_t bit_len = static_cast<std::uint64_t>(len) * 8;
  msg.push_back(0x80);
  while (msg.size() % 64 != 56) msg.push_back(0);
  for (int i = 7; i >= 0; --i) msg.push_back(static_cast<std::uint8_t>(bit_len >> (8 * i)));

  for (std::size_t off = 0; off < msg.size(); off += 64) {
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (std::uint32_t(msg[off + 4 * i]) << 24) | (std::uint32_t(msg[off + 4 * i + 1]) << 16) |
             (std::uint32_t(msg[off + 4 * i + 2]) << 8) | std::uint32_t(msg[off + 4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      const auto s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const auto s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      const auto S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const auto ch = (e & f) ^ (~e & g);
      const auto t1 = hh + S1 + ch + k[i] + w[i];
      const auto S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const auto maj = (a & b) ^ (a & c) ^ (b & c);
      const auto t2 = S0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a, h[1] += b, h[2] += c, h[3] += d, h[4] += e, h[5] += f, h[6] += g, h[7] += hh;
  }
  Digest out{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 4; ++j) out[4 * i + j] = static_cast<std::uint8_t>(h[i] >> (24 - 8 * j));
  return out;
}

inline Digest sha256(const Bytes& b) { return sha256(b.data(), b.size()); }
inline Digest sha256(const std::string& s) {
  return sha256(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

inline std::string hex(const std::uint8_t* p, std::size_t n) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    out += digits[p[i] >> 4];
    out += digits[p[i] & 15];
  }
  return out;
}
inline std::string hex(const Digest& d) { return hex(d.data(), d.size()); }
inline std::string hex(const Bytes& b) { return hex(b.data(), b.size()); }

inline Bytes unhex(const std::string& s) {
  Bytes out;
  for (std::size_t i = 0; i + 1 < s.size(); i += 2)
    out.push_back(static_cast<std::uint8_t>(std::stoi(s.substr(i, 2), nullptr, 16)));
  return out;
}

// RFC 4648 base32, lowercase, unpadded.
inline std::string base32(const Bytes& in) {
  static const char* alphabet = "abcdefghijklmnopqrstuvwxyz234567";
  std::string out;
  std::uint32_t buffer = 0;
  int bits = 0;
  for (auto byte : in) {
    buffer = (buffer << 8) | byte;
    bits += 8;
    while (bits >= 5) {
      out += alphabet[(buffer >> (bits - 5)) & 31];
      bits -= 5;
    }
  }
  if (bits > 0) out += alphabet[(buffer << (5 - bits)) & 31];
  return out;
}

// Highest set bit of a big-endian 256-bit value by scanning every bit.
inline int bit_scan(const std::array<std::uint8_t, 32>& d) {
  for (int bit = 255; bit >= 0; --bit) {
    const int byte = 31 - bit / 8;
    if (d[byte] & (1u << (bit % 8))) return bit;
  }
  return -1;
}

// Indices of the `count` keys closest to `target` under XOR, by full sort.
inline std::vector<std::size_t> closest(const std::vector<Digest>& keys, const Digest& target,
                                        std::size_t count) {
  std::vector<std::pair<Digest, std::size_t>> d;
  d.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    Digest x{};
    for (int b = 0; b < 32; ++b) x[b] = keys[i][b] ^ target[b];
    d.emplace_back(x, i);
  }
  std::sort(d.begin(), d.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < std::min(count, d.size()); ++i) out.push_back(d[i].second);
  return out;
}

// Number of blocks in a balanced left-to-right DAG over `leaves` leaves.
inline std::size_t tree_blocks(std::size_t leaves, std::size_t fanout) {
  std::size_t total = leaves;
  std::size_t level = leaves;
  while (level > 1) {
    level = (level + fanout - 1) / fanout;
    total += level;
  }
  return total;
}

// Byte-budget LRU on a hand-rolled doubly linked list.
class ReferenceLru {
 public:
  explicit ReferenceLru(std::uint64_t capacity) : capacity_(capacity) {
    head_.next = &tail_;
    tail_.prev = &head_;
  }
  ~ReferenceLru() {
    for (auto* n = head_.next; n != &tail_;) {
      auto* next = n->next;
      delete n;
      n = next;
    }
  }
  ReferenceLru(const ReferenceLru&) = delete;
  ReferenceLru& operator=(const ReferenceLru&) = delete;

  bool get(const std::string& key) {
    auto it = nodes_.find(key);
    if (it == nodes_.end()) return false;
    unlink(it->second);
    push_front(it->second);
    return true;
  }

  std::vector<std::string> put(const std::string& key, std::uint64_t size) {
    std::vector<std::string> evicted;
    if (auto it = nodes_.find(key); it != nodes_.end()) {
      bytes_ -= it->second->size;
      unlink(it->second);
      delete it->second;
      nodes_.erase(it);
    }
    if (size > capacity_) return evicted;
    while (bytes_ + size > capacity_ && tail_.prev != &head_) {
      Node* victim = tail_.prev;
      unlink(victim);
      bytes_ -= victim->size;
      evicted.push_back(victim->key);
      nodes_.erase(victim->key);
      delete victim;
    }
    auto* n = new Node{key, size};
    push_front(n);
    nodes_[key] = n;
    bytes_ += size;
    return evicted;
  }

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    for (auto* n = head_.next; n != &tail_; n = n->next) out.push_back(n->key);
    return out;
  }
  std::uint64_t bytes() const { return bytes_; }

 private:
  struct Node {
    std::string key;
    std::uint64_t size = 0;
    Node* prev = nullptr;
    Node* next = nullptr;
  };
  void unlink(Node* n) {
    n->prev->next = n->next;
    n->next->prev = n->prev;
  }
  void push_front(Node* n) {
    n->next = head_.next;
    n->prev = &head_;
    head_.next->prev = n;
    head_.next = n;
  }

  std::uint64_t capacity_;
  std::uint64_t bytes_ = 0;
  Node head_, tail_;
  std::map<std::string, Node*> nodes_;
};

// Zipf(s) over ranks 0..n-1 by inverse CDF.
class Zipf {
 public:
  Zipf(std::size_t n, double s) : cdf_(n) {
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += 1.0 / std::pow(static_cast<double>(i + 1), s);
      cdf_[i] = sum;
    }
    for (auto& c : cdf_) c /= sum;
  }
  template <class Rng>
  std::size_t operator()(Rng& rng) {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return static_cast<std::size_t>(std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace oracle
