// SPDX-License-Identifier: Apache-2.0

#include "ipfsim/simnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace ipfsim::sim {

Result<double> percentile(std::vector<double> values, double q) {
  if (values.empty()) return Errc::empty_window;
  if (q < 0.0 || q > 1.0) return Errc::invalid_config;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<CdfPoint> out;
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.push_back({values[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

Result<PercentileRow> percentile_row(std::string label, const std::vector<double>& values) {
  if (values.empty()) return Errc::empty_window;
  PercentileRow row;
  row.label = std::move(label);
  row.p50 = percentile(values, 0.50).value();
  row.p90 = percentile(values, 0.90).value();
  row.p95 = percentile(values, 0.95).value();
  row.n = values.size();
  return row;
}

void write_percentile_csv(std::ostream& out, const std::vector<PercentileRow>& rows) {
  out << "region,p50,p90,p95,n\n";
  for (const auto& r : rows)
    out << fmt::format("{},{:.3f},{:.3f},{:.3f},{}\n", r.label, r.p50, r.p90, r.p95, r.n);
}

void write_cdf_csv(std::ostream& out, const std::string& series, const std::vector<CdfPoint>& cdf,
                   bool header) {
  if (header) out << "series,x,p\n";
  for (const auto& pt : cdf) out << fmt::format("{},{:.6f},{:.6f}\n", series, pt.x, pt.p);
}

}  // namespace ipfsim::sim
