// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "ipfsim/common/error.hpp"
#include "ipfsim/common/time.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <string_view>

namespace ipfsim::sim {

enum class ReportKind {
  publication_cdf,
  retrieval_cdf,
  stretch,
  churn_cdf,
  crawl_summary,
  gateway_stats,
};

Result<ReportKind> parse_report_kind(std::string_view name);
std::string_view report_kind_name(ReportKind kind);

struct ReportOptions {
  /// churn-cdf: observation window; defaults to the span of the sessions.
  std::optional<Duration> window;
};

/// Reads a line-delimited JSON log (simulation events or a gateway access
/// log) and writes the requested table as CSV.
Status write_report(std::istream& log, ReportKind kind, std::ostream& csv,
                    const ReportOptions& options = {});

}  // namespace ipfsim::sim
