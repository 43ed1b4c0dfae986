// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/simnet/crawler.hpp"

#include <algorithm>
#include <deque>
#include <memory>

namespace ipfsim::sim {

std::size_t CrawlResult::dialable() const {
  return static_cast<std::size_t>(
      std::count_if(peers.begin(), peers.end(), [](const auto& kv) { return kv.second.dialable; }));
}

namespace {

struct CrawlState {
  SimNetwork* net = nullptr;
  std::size_t crawler = 0;
  std::size_t concurrency = 1;
  std::deque<dht::PeerInfo> frontier;
  std::size_t in_flight = 0;
  CrawlResult result;
  std::function<void(CrawlResult)> done;
  bool finished = false;
};

void pump(const std::shared_ptr<CrawlState>& s) {
  auto& node = s->net->host(s->crawler).node();
  while (s->in_flight < s->concurrency && !s->frontier.empty()) {
    dht::PeerInfo peer = std::move(s->frontier.front());
    s->frontier.pop_front();
    ++s->in_flight;
    ++s->result.requests;
    node.dht_network().call(peer, dht::DumpBuckets{node.dht().origin()},
                            [s, id = peer.id](std::optional<dht::Message> reply) {
                              --s->in_flight;
                              auto* r = reply ? std::get_if<dht::PeersReply>(&*reply) : nullptr;
                              if (r != nullptr) {
                                auto& entry = s->result.peers[id];
                                entry.dialable = true;
                                entry.bucket_entries = r->closer.size();
                                for (const auto& p : r->closer) {
                                  auto [it, fresh] = s->result.peers.try_emplace(p.id);
                                  if (it->second.addrs.empty()) it->second.addrs = p.addrs;
                                  if (fresh) s->frontier.push_back(p);
                                }
                              }
                              pump(s);
                            });
  }
  if (s->in_flight == 0 && s->frontier.empty() && !s->finished) {
    s->finished = true;
    s->result.finished = s->net->now();
    auto cb = std::move(s->done);
    cb(std::move(s->result));
  }
}

}  // namespace

void crawl(SimNetwork& net, std::size_t crawler, const std::vector<std::size_t>& bootstraps,
           std::size_t concurrency, std::function<void(CrawlResult)> done) {
  auto s = std::make_shared<CrawlState>();
  s->net = &net;
  s->crawler = crawler;
  s->concurrency = std::max<std::size_t>(concurrency, 1);
  s->done = std::move(done);
  s->result.started = net.now();
  for (auto b : bootstraps) {
    const Host& h = net.host(b);
    auto [it, fresh] = s->result.peers.try_emplace(h.id());
    it->second.addrs = h.addrs();
    if (fresh) s->frontier.push_back(dht::PeerInfo{h.id(), h.addrs()});
  }
  pump(s);
}

Duration revisit_schedule(Duration observed_uptime, RevisitBounds bounds) {
  const auto scaled = Duration(static_cast<Duration::rep>(
      static_cast<double>(observed_uptime.count()) * bounds.factor));
  return std::clamp(scaled, bounds.min, bounds.max);
}

namespace {

struct MonitorState {
  SimNetwork* net = nullptr;
  VTime start{};
  VTime close{};
  RevisitBounds bounds;
  std::vector<std::optional<VTime>> session_start;
  std::vector<SessionObservation> sessions;
  std::size_t active = 0;
  std::function<void(std::vector<SessionObservation>)> done;
};

void probe(const std::shared_ptr<MonitorState>& s, std::size_t slot, std::size_t host) {
  const VTime now = s->net->now();
  const Host& h = s->net->host(host);
  auto& open = s->session_start[slot];
  if (now >= s->close) {
    if (open) s->sessions.push_back({h.id(), *open, s->close, true});
    open.reset();
    if (--s->active == 0) {
      std::sort(s->sessions.begin(), s->sessions.end(), [](const auto& a, const auto& b) {
        return a.start != b.start ? a.start < b.start : a.peer < b.peer;
      });
      auto cb = std::move(s->done);
      cb(std::move(s->sessions));
    }
    return;
  }
  const bool alive = h.online() && h.spec().dialable;
  Duration next = s->bounds.min;
  if (alive) {
    if (!open) open = now;
    next = revisit_schedule(now - *open, s->bounds);
  } else if (open) {
    s->sessions.push_back({h.id(), *open, now, false});
    open.reset();
  }
  const VTime at = std::min(now + next, s->close);
  s->net->clock().schedule_at(at, [s, slot, host] { probe(s, slot, host); });
}

}  // namespace

void monitor(SimNetwork& net, std::vector<std::size_t> peers, Duration window,
             std::function<void(std::vector<SessionObservation>)> done, RevisitBounds bounds) {
  auto s = std::make_shared<MonitorState>();
  s->net = &net;
  s->start = net.now();
  s->close = s->start + window;
  s->bounds = bounds;
  s->session_start.resize(peers.size());
  s->active = peers.size();
  s->done = std::move(done);
  if (peers.empty()) {
    auto cb = std::move(s->done);
    cb({});
    return;
  }
  for (std::size_t i = 0; i < peers.size(); ++i) probe(s, i, peers[i]);
}

}  // namespace ipfsim::sim
