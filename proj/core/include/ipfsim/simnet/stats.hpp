// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/error.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace ipfsim::sim {

/// Linear interpolation between closest ranks; q in [0, 1].
Result<double> percentile(std::vector<double> values, double q);

struct CdfPoint {
  double x = 0.0;
  double p = 0.0;  // fraction of samples <= x
};

/// Empirical CDF, one point per distinct value, ascending.
std::vector<CdfPoint> empirical_cdf(std::vector<double> values);

struct PercentileRow {
  std::string label;
  double p50 = 0.0;
  double p90 = 0.0;
  double p95 = 0.0;
  std::size_t n = 0;
};

Result<PercentileRow> percentile_row(std::string label, const std::vector<double>& values);

/// region,p50,p90,p95,n
void write_percentile_csv(std::ostream& out, const std::vector<PercentileRow>& rows);
/// series,x,p
void write_cdf_csv(std::ostream& out, const std::string& series, const std::vector<CdfPoint>& cdf,
                   bool header = true);

}  // namespace ipfsim::sim
