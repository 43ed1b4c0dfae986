// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/simnet/churn.hpp"

#include <algorithm>
#include <cmath>

namespace ipfsim::sim {

Result<DistKind> parse_dist(std::string_view name) {
  if (name == "exponential") return DistKind::exponential;
  if (name == "lognormal") return DistKind::lognormal;
  if (name == "weibull") return DistKind::weibull;
  return Errc::invalid_config;
}

Duration DurationDist::sample(std::mt19937_64& rng) const {
  const double mean_s = to_seconds(mean);
  double s = mean_s;
  switch (kind) {
    case DistKind::exponential:
      s = std::exponential_distribution<double>(1.0 / mean_s)(rng);
      break;
    case DistKind::lognormal: {
      const double mu = std::log(mean_s) - shape * shape / 2.0;
      s = std::lognormal_distribution<double>(mu, shape)(rng);
      break;
    }
    case DistKind::weibull: {
      const double scale = mean_s / std::tgamma(1.0 + 1.0 / shape);
      s = std::weibull_distribution<double>(shape, scale)(rng);
      break;
    }
  }
  // Durations are strictly positive at virtual-time resolution.
  return std::max(from_seconds(s), Duration(1));
}

Status ChurnModel::validate() const {
  for (const auto* d : {&session, &offline})
    if (d->mean <= Duration::zero() || d->shape <= 0.0) return Errc::invalid_config;
  for (const auto& [region, scale] : region_session_scale)
    if (scale <= 0.0) return Errc::invalid_config;
  return outcome::success();
}

Duration ChurnModel::sample_session(std::size_t region, std::mt19937_64& rng) const {
  DurationDist d = session;
  if (auto it = region_session_scale.find(region); it != region_session_scale.end())
    d.mean = from_seconds(to_seconds(d.mean) * it->second);
  return d.sample(rng);
}

Duration ChurnModel::sample_offline(std::mt19937_64& rng) const { return offline.sample(rng); }

std::vector<SessionObservation> generate_sessions(const ChurnModel& model,
                                                  const std::vector<mf::PeerId>& peers,
                                                  Duration window, std::mt19937_64& rng) {
  std::vector<SessionObservation> out;
  const VTime end{window};
  for (const auto& peer : peers) {
    const Duration cycle = model.session.mean + model.offline.mean;
    std::uniform_int_distribution<Duration::rep> phase(0, cycle.count());
    VTime t{Duration(phase(rng))};
    while (t < end) {
      const VTime stop = t + model.sample_session(0, rng);
      if (stop >= end) {
        out.push_back({peer, t, end, true});
        break;
      }
      out.push_back({peer, t, stop, false});
      t = stop + model.sample_offline(rng);
    }
  }
  return out;
}

Result<ChurnCdf> churn_cdf_create_based(const std::vector<SessionObservation>& observations,
                                        VTime window_start, Duration window) {
  if (window <= Duration::zero()) return Errc::empty_window;
  const VTime half = window_start + window / 2;
  const VTime close = window_start + window;
  ChurnCdf r;
  double sum = 0.0;
  for (const auto& o : observations) {
    if (o.start < window_start || o.start >= half) {
      ++r.excluded;
      continue;
    }
    VTime end = o.end;
    if (o.censored || end > close) {
      end = std::min(end, close);
      ++r.censored;
    }
    const double len = to_seconds(end - o.start);
    r.lengths_s.push_back(len);
    sum += len;
  }
  r.included = r.lengths_s.size();
  if (r.included == 0) return Errc::empty_window;
  r.mean_s = sum / static_cast<double>(r.included);
  r.cdf = empirical_cdf(r.lengths_s);
  return r;
}

}  // namespace ipfsim::sim
