// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/bitswap/wantlist.hpp"

namespace ipfsim::bitswap {

void Wantlist::add(const mf::Cid& cid, WantKind kind, VTime now) {
  auto [it, inserted] = entries_.try_emplace(cid, WantEntry{kind, now});
  if (!inserted && kind == WantKind::want_block) it->second.kind = WantKind::want_block;
}

bool Wantlist::remove(const mf::Cid& cid) { return entries_.erase(cid) > 0; }

std::optional<WantEntry> Wantlist::get(const mf::Cid& cid) const {
  auto it = entries_.find(cid);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

}  // namespace ipfsim::bitswap
