// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/kaddht/messages.hpp"
#include "ipfsim/multiformats/cid.hpp"
#include "ipfsim/multiformats/dht_key.hpp"
#include "ipfsim/multiformats/multiaddr.hpp"
#include "ipfsim/multiformats/multibase.hpp"
#include "ipfsim/multiformats/peer_id.hpp"
#include "ipfsim/multiformats/sha256.hpp"
#include "ipfsim/multiformats/varint.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace ipfsim;
using namespace ipfsim::mf;

namespace {

constexpr const char* kPublished = "bafybeigdyrzt5sfp7udm7hu76uh7y26nf3efuylqabf3oclgtqy55fbzdi";
constexpr const char* kPublishedHex =
    "01701220c3c4733ec8affd06cf9e9ff50ffc6bcd2ec85a6170004bb709669c31de94391a";
constexpr const char* kPublishedV0 = "QmbWqxBEKC3P8tqsKc98xmWNzrzDtRLMiMPL8wBuTGsMnR";

Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return b;
}

Cid random_cid(std::mt19937_64& rng) {
  auto mh = multihash_sha256(random_bytes(rng, rng() % 64));
  if (rng() % 5 == 0) return Cid::v0(mh);
  static const std::uint64_t codecs[] = {codec::kRaw, codec::kDagPb, 0x71, 0x300001};
  return Cid::v1(codecs[rng() % 4], mh);
}

std::string random_multiaddr(std::mt19937_64& rng) {
  std::string s;
  if (rng() % 2) {
    s = "/ip4/" + std::to_string(rng() % 256) + "." + std::to_string(rng() % 256) + "." +
        std::to_string(rng() % 256) + "." + std::to_string(rng() % 256);
  } else {
    s = "/ip6/2001:db8::" + std::to_string(rng() % 9000 + 1);
  }
  const auto port = std::to_string(rng() % 65536);
  switch (rng() % 3) {
    case 0: s += "/tcp/" + port; break;
    case 1: s += "/udp/" + port + "/quic"; break;
    default: s += "/tcp/" + port + "/ws"; break;
  }
  if (rng() % 2) s += "/p2p/" + PeerId::from_public_key(random_bytes(rng, 32)).value().str();
  return s;
}

}  // namespace

TEST_SUITE("varint") {
  TEST_CASE("values below 128 take one byte") {
    for (std::uint64_t v = 0; v < 128; ++v) CHECK(encode_uvarint(v) == Bytes{static_cast<std::uint8_t>(v)});
  }

  TEST_CASE("LEB128 layout") {
    CHECK(encode_uvarint(128) == Bytes{0x80, 0x01});
    CHECK(encode_uvarint(300) == Bytes{0xac, 0x02});
    CHECK(encode_uvarint(0x70) == Bytes{0x70});
    CHECK(encode_uvarint(16384) == Bytes{0x80, 0x80, 0x01});
  }

  TEST_CASE("round trip and advance") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10000; ++i) {
      const std::uint64_t v = rng() >> (rng() % 63 + 1);
      Bytes b = encode_uvarint(v);
      b.push_back(0xee);
      ByteView in(b);
      auto r = read_uvarint(in);
      REQUIRE(r);
      CHECK(r.value() == v);
      CHECK(in.size() == 1);
    }
  }

  TEST_CASE("rejects bad encodings") {
    Bytes unterminated{0x80, 0x80};
    ByteView a(unterminated);
    CHECK(read_uvarint(a).error() == Errc::malformed_varint);
    Bytes overlong{0x81, 0x00};
    ByteView b(overlong);
    CHECK(read_uvarint(b).error() == Errc::malformed_varint);
    Bytes empty;
    ByteView c(empty);
    CHECK_FALSE(read_uvarint(c));
  }
}

TEST_SUITE("multihash") {
  TEST_CASE("sha2-256 of the empty string") {
    auto mh = multihash_sha256({});
    CHECK(mh.code == 0x12);
    CHECK(mh.digest_length() == 32);
    CHECK(to_hex(mh.digest) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  }

  TEST_CASE("NIST vectors against the reference hash") {
    const std::string two_block = "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq";
    CHECK(to_hex(sha256(to_bytes("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(to_hex(sha256(to_bytes(two_block))) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    CHECK(oracle::hex(oracle::sha256(two_block)) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  }

  TEST_CASE("matches the reference hash on random inputs") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
      const auto data = random_bytes(rng, rng() % 300);
      const auto mh = multihash_sha256(data);
      CHECK(oracle::hex(mh.digest) == oracle::hex(oracle::sha256(data)));
      CHECK(mh.digest_length() == 32);
    }
  }

  TEST_CASE("equal iff inputs equal") {
    std::mt19937_64 rng(6);
    std::vector<Bytes> corpus;
    for (int i = 0; i < 300; ++i) corpus.push_back(random_bytes(rng, rng() % 4));
    for (std::size_t i = 0; i < corpus.size(); ++i)
      for (std::size_t j = i; j < corpus.size(); ++j)
        CHECK((multihash_sha256(corpus[i]) == multihash_sha256(corpus[j])) == (corpus[i] == corpus[j]));
  }

  TEST_CASE("decoding enforces the declared length") {
    auto bytes = multihash_sha256(to_bytes("x")).to_bytes();
    bytes.pop_back();
    CHECK(Multihash::from_bytes(bytes).error() == Errc::digest_length_mismatch);
    bytes = multihash_sha256(to_bytes("x")).to_bytes();
    bytes.push_back(0);
    CHECK(Multihash::from_bytes(bytes).error() == Errc::trailing_bytes);
  }
}

TEST_SUITE("cid") {
  TEST_CASE("published CIDv1 decodes field by field") {
    auto cid = decode_cid(kPublished);
    REQUIRE(cid);
    CHECK(cid.value().version == 1);
    CHECK(cid.value().codec == 0x70);
    CHECK(cid.value().hash.code == 0x12);
    CHECK(cid.value().hash.digest_length() == 32);
    CHECK(to_hex(cid.value().to_bytes()) == kPublishedHex);
    CHECK(encode_cid(cid.value(), Multibase::base32).value() == kPublished);
    CHECK(cid.value().str() == kPublished);
  }

  TEST_CASE("binary layout bytes") {
    auto cid = decode_cid(kPublished).value();
    const auto b = cid.to_bytes();
    REQUIRE(b.size() == 36);
    CHECK(b[0] == 0b00000001);
    CHECK(b[1] == 0b01110000);
    CHECK(b[2] == 0b00010010);
    CHECK(b[3] == 0b00100000);
    CHECK(std::string(kPublished).substr(1) == oracle::base32(b));
  }

  TEST_CASE("v0 strings") {
    auto v1 = decode_cid(kPublished).value();
    auto v0 = Cid::v0(v1.hash);
    CHECK(v0.str() == kPublishedV0);
    CHECK(v0.str().rfind("Qm", 0) == 0);
    auto back = decode_cid(kPublishedV0);
    REQUIRE(back);
    CHECK(back.value() == v0);
    CHECK(back.value().codec == codec::kDagPb);
    // Both spellings share one DHT key.
    CHECK(dht_key(v0) == dht_key(v1));
  }

  TEST_CASE("v0 needs dag-pb and sha2-256") {
    auto bad = Cid{0, codec::kRaw, multihash_sha256(to_bytes("a"))};
    CHECK_FALSE(bad.to_string(Multibase::base58btc));
    auto v1 = Cid::v1(codec::kRaw, multihash_sha256(to_bytes("a")));
    CHECK(v1.to_string(Multibase::base58btc).value()[0] == 'z');
  }

  TEST_CASE("truncated digest in a base58 string") {
    auto bytes = decode_cid(kPublished).value().to_bytes();
    bytes.pop_back();
    const auto text = "z" + base58btc_encode(bytes);
    CHECK(decode_cid(text).error() == Errc::digest_length_mismatch);
  }

  TEST_CASE("decode errors") {
    CHECK(decode_cid("").error() == Errc::empty_input);
    CHECK(decode_cid("xabc").error() == Errc::unknown_multibase_prefix);
    CHECK(decode_cid("b0189").error() == Errc::invalid_base_character);
    auto bytes = decode_cid(kPublished).value().to_bytes();
    bytes.push_back(7);
    CHECK(decode_cid("b" + base32_encode(bytes)).error() == Errc::trailing_bytes);
    CHECK(decode_cid("b" + base32_encode(Bytes{0x02, 0x70, 0x12, 0x00})).error() ==
          Errc::invalid_cid_version);
  }

  TEST_CASE("unknown codecs decode as numbers") {
    auto cid = Cid::v1(0x300001, multihash_sha256(to_bytes("z")));
    auto back = decode_cid(cid.str());
    REQUIRE(back);
    CHECK(back.value().codec == 0x300001);
    CHECK_FALSE(back.value().known_codec());
    CHECK(codec_name(codec::kRaw).value() == "raw");
  }

  TEST_CASE("random round trips in both bases") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10000; ++i) {
      const auto cid = random_cid(rng);
      CHECK(Cid::from_bytes(cid.to_bytes()).value() == cid);
      CHECK(decode_cid(cid.str()).value() == cid);
      if (cid.version == 1)
        CHECK(decode_cid(encode_cid(cid, Multibase::base58btc).value()).value() == cid);
    }
  }

  TEST_CASE("base32 agrees with the reference encoder") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 2000; ++i) {
      const auto b = random_bytes(rng, rng() % 50);
      CHECK(base32_encode(b) == oracle::base32(b));
      CHECK(base32_decode(base32_encode(b)).value() == b);
      CHECK(base58btc_decode(base58btc_encode(b)).value() == b);
    }
  }

  TEST_CASE("decoding is total on garbage") {
    std::mt19937_64 rng(13);
    const std::string alphabet = "bzQm0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHJKLMNPQRSTUVWXYZ/=";
    for (int i = 0; i < 20000; ++i) {
      const auto raw = random_bytes(rng, rng() % 48);
      auto a = Cid::from_bytes(raw);
      if (a) CHECK(a.value().to_bytes() == raw);
      std::string s;
      for (std::size_t j = rng() % 60; j > 0; --j) s += alphabet[rng() % alphabet.size()];
      auto b = decode_cid(s);
      if (b) CHECK(decode_cid(b.value().str()).value() == b.value());
      (void)Multiaddr::parse(s);
      (void)PeerId::parse(s);
      (void)dht::decode(raw);
    }
  }
}

TEST_SUITE("multiaddr") {
  TEST_CASE("layered address with a peer id") {
    const std::string text = std::string("/ip4/1.2.3.4/tcp/3333/p2p/") + kPublishedV0;
    auto m = parse_multiaddr(text);
    REQUIRE(m);
    const auto& c = m.value().components();
    REQUIRE(c.size() == 3);
    CHECK(c[0].protocol == Protocol::ip4);
    CHECK(c[0].value == "1.2.3.4");
    CHECK(c[1].protocol == Protocol::tcp);
    CHECK(c[1].value == "3333");
    CHECK(c[2].protocol == Protocol::p2p);
    CHECK(c[2].value == kPublishedV0);
    CHECK(m.value().str() == text);
  }

  TEST_CASE("minimal address") {
    auto m = parse_multiaddr("/ip4/0.0.0.0");
    REQUIRE(m);
    CHECK(m.value().components().size() == 1);
  }

  TEST_CASE("valueless transports") {
    auto m = parse_multiaddr("/ip4/10.0.0.1/udp/4001/quic");
    REQUIRE(m);
    CHECK(m.value().components().back().protocol == Protocol::quic);
    CHECK(m.value().components().back().value.empty());
    CHECK(parse_multiaddr("/ip6/::1/tcp/1/ws").value().str() == "/ip6/::1/tcp/1/ws");
  }

  TEST_CASE("errors") {
    CHECK(parse_multiaddr("/tcp/99999").error() == Errc::invalid_protocol_value);
    CHECK(parse_multiaddr("/ip4/1.2.3").error() == Errc::invalid_protocol_value);
    CHECK(parse_multiaddr("/ip4/256.1.1.1").error() == Errc::invalid_protocol_value);
    CHECK(parse_multiaddr("/sctp/5").error() == Errc::unknown_protocol);
    CHECK(parse_multiaddr("ip4/1.2.3.4").error() == Errc::missing_leading_slash);
    CHECK(parse_multiaddr("/ip4/1.2.3.4//tcp/1").error() == Errc::empty_component);
    CHECK(parse_multiaddr("/tcp").error() == Errc::invalid_protocol_value);
    CHECK(parse_multiaddr("/p2p/notapeer").error() == Errc::invalid_protocol_value);
  }

  TEST_CASE("random round trips") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 5000; ++i) {
      const auto text = random_multiaddr(rng);
      auto m = parse_multiaddr(text);
      REQUIRE_MESSAGE(m, text);
      CHECK(m.value().str() == text);
      CHECK(parse_multiaddr(m.value().str()).value() == m.value());
    }
  }
}

TEST_SUITE("peer id") {
  TEST_CASE("deterministic") {
    const auto key = to_bytes("public key bytes");
    CHECK(peer_id_from_public_key(key).value() == peer_id_from_public_key(key).value());
  }

  TEST_CASE("digest is the reference hash of the key") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
      const auto key = random_bytes(rng, 32 + rng() % 32);
      const auto id = peer_id_from_public_key(key).value();
      CHECK(oracle::hex(id.multihash().digest) == oracle::hex(oracle::sha256(key)));
      CHECK(PeerId::parse(id.str()).value() == id);
      CHECK(id.str().rfind("Qm", 0) == 0);
    }
  }

  TEST_CASE("no collisions over 1e5 random keys") {
    std::mt19937_64 rng(32);
    std::set<PeerId> seen;
    for (int i = 0; i < 100000; ++i) seen.insert(peer_id_from_public_key(random_bytes(rng, 32)).value());
    CHECK(seen.size() == 100000);
  }

  TEST_CASE("empty key") { CHECK(peer_id_from_public_key({}).error() == Errc::empty_public_key); }
}

TEST_SUITE("dht key") {
  TEST_CASE("pure and 256 bits") {
    auto cid = decode_cid(kPublished).value();
    CHECK(dht_key(cid) == dht_key(cid));
    CHECK(dht_key(cid).bits.size() * 8 == 256);
  }

  TEST_CASE("hash of the canonical binary form") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
      const auto cid = Cid::v1(codec::kRaw, multihash_sha256(random_bytes(rng, 16)));
      CHECK(dht_key(cid).hex() == oracle::hex(oracle::sha256(cid.to_bytes())));
      const auto id = peer_id_from_public_key(random_bytes(rng, 32)).value();
      CHECK(dht_key(id).hex() == oracle::hex(oracle::sha256(id.to_bytes())));
    }
  }

  TEST_CASE("a CID and a peer id over the same digest differ") {
    auto mh = multihash_sha256(to_bytes("shared"));
    auto cid = Cid::v1(codec::kRaw, mh);
    auto id = PeerId::from_multihash(mh).value();
    CHECK(dht_key(cid) != dht_key(id));
  }
}

TEST_SUITE("varint") {
  TEST_CASE("63-bit ceiling") {
    const std::uint64_t max = (std::uint64_t{1} << 63) - 1;
    Bytes b = encode_uvarint(max);
    CHECK(b.size() == kMaxVarintBytes);
    ByteView in(b);
    CHECK(read_uvarint(in).value() == max);
    Bytes too_big = encode_uvarint(std::uint64_t{1} << 63);
    ByteView in2(too_big);
    CHECK(read_uvarint(in2).error() == Errc::malformed_varint);
  }
}
