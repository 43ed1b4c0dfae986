// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/time.hpp"
#include "ipfsim/multiformats/multiaddr.hpp"
#include "ipfsim/multiformats/peer_id.hpp"

#include <list>
#include <optional>
#include <unordered_map>
#include <vector>

namespace ipfsim::bitswap {

inline constexpr std::size_t kAddressBookCapacity = 900;

struct AddressBookEntry {
  mf::PeerId peer;
  std::vector<mf::Multiaddr> addrs;
  VTime last_seen{};
};

/// Recently seen peers and their addresses, evicting the least recently
/// seen entry once the capacity would be exceeded.
class AddressBook {
 public:
  explicit AddressBook(std::size_t capacity = kAddressBookCapacity) : capacity_(capacity) {}

  /// Inserts or refreshes `peer`. Empty `addrs` keep previously known ones.
  /// Returns the evicted peer, if any.
  std::optional<mf::PeerId> touch(const mf::PeerId& peer, const std::vector<mf::Multiaddr>& addrs,
                                  VTime now);

  const AddressBookEntry* find(const mf::PeerId& peer) const;
  bool contains(const mf::PeerId& peer) const { return index_.contains(peer); }

  std::size_t size() const { return order_.size(); }
  std::size_t capacity() const { return capacity_; }

  /// Entries from least to most recently seen.
  const std::list<AddressBookEntry>& entries() const { return order_; }

 private:
  std::size_t capacity_;
  std::list<AddressBookEntry> order_;
  std::unordered_map<mf::PeerId, std::list<AddressBookEntry>::iterator, mf::PeerIdHash> index_;
};

/// Free-function form of AddressBook::touch.
inline std::optional<mf::PeerId> book_touch(AddressBook& book, const mf::PeerId& peer,
                                            const std::vector<mf::Multiaddr>& addrs, VTime now) {
  return book.touch(peer, addrs, now);
}

}  // namespace ipfsim::bitswap
