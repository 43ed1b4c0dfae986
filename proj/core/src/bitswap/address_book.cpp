// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/bitswap/address_book.hpp"

namespace ipfsim::bitswap {

std::optional<mf::PeerId> AddressBook::touch(const mf::PeerId& peer,
                                             const std::vector<mf::Multiaddr>& addrs, VTime now) {
  if (auto it = index_.find(peer); it != index_.end()) {
    auto node = it->second;
    node->last_seen = now;
    if (!addrs.empty()) node->addrs = addrs;
    order_.splice(order_.end(), order_, node);
    return std::nullopt;
  }
  std::optional<mf::PeerId> evicted;
  if (capacity_ == 0) return evicted;
  if (order_.size() >= capacity_) {
    evicted = order_.front().peer;
    index_.erase(order_.front().peer);
    order_.pop_front();
  }
  order_.push_back(AddressBookEntry{peer, addrs, now});
  index_.emplace(peer, std::prev(order_.end()));
  return evicted;
}

const AddressBookEntry* AddressBook::find(const mf::PeerId& peer) const {
  auto it = index_.find(peer);
  return it == index_.end() ? nullptr : &*it->second;
}

}  // namespace ipfsim::bitswap
