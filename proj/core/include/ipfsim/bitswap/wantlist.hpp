// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/time.hpp"
#include "ipfsim/multiformats/cid.hpp"

#include <map>
#include <optional>

namespace ipfsim::bitswap {

enum class WantKind { want_have, want_block };

struct WantEntry {
  WantKind kind = WantKind::want_have;
  VTime added{};
};

/// Outstanding wants; each CID appears at most once.
class Wantlist {
 public:
  /// Adds the CID or upgrades an existing want-have to want-block. The
  /// original insertion time is kept.
  void add(const mf::Cid& cid, WantKind kind, VTime now);
  /// Called when the block arrives.
  bool remove(const mf::Cid& cid);

  bool contains(const mf::Cid& cid) const { return entries_.contains(cid); }
  std::optional<WantEntry> get(const mf::Cid& cid) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<mf::Cid, WantEntry> entries_;
};

}  // namespace ipfsim::bitswap
