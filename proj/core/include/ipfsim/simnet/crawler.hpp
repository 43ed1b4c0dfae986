// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/simnet/churn.hpp"
#include "ipfsim/simnet/network.hpp"

#include <functional>
#include <map>

namespace ipfsim::sim {

struct CrawlEntry {
  std::vector<mf::Multiaddr> addrs;
  bool dialable = false;    // answered the bucket dump
  bool server_role = true;  // learned from someone's routing table
  std::size_t bucket_entries = 0;
};

struct CrawlResult {
  std::map<PeerId, CrawlEntry> peers;
  VTime started{};
  VTime finished{};
  std::size_t requests = 0;

  std::size_t dialable() const;
  std::size_t undialable() const { return peers.size() - dialable(); }
};

/// Breadth-first enumeration of routing tables from `bootstraps` through
/// the crawler host: every newly learned peer is asked for all its bucket
/// entries until no new peers turn up.
void crawl(SimNetwork& net, std::size_t crawler, const std::vector<std::size_t>& bootstraps,
           std::size_t concurrency, std::function<void(CrawlResult)> done);

struct RevisitBounds {
  Duration min = std::chrono::seconds(30);
  Duration max = std::chrono::minutes(15);
  double factor = 0.5;
};

/// clamp(factor * uptime, min, max).
Duration revisit_schedule(Duration observed_uptime, RevisitBounds bounds = {});

/// Uptime monitor: probes each peer, revisiting after revisit_schedule of
/// its current uptime (offline peers after the minimum interval), and
/// records sessions over [start, start + window).
void monitor(SimNetwork& net, std::vector<std::size_t> peers, Duration window,
             std::function<void(std::vector<SessionObservation>)> done, RevisitBounds bounds = {});

}  // namespace ipfsim::sim
