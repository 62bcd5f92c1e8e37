#pragma once

// Checkpoint tables of the census counters against the bound envelopes, and
// a log-log SVG rendering of them.

#include <string>
#include <vector>

#include "frobcount/census.hpp"

namespace frobcount {

struct ReportOptions {
  std::vector<double> checkpoints;
  double kappa_uncond = 1.0;
  double kappa_grh = 1.0;
  double kappa_pcc = 1.0;
  double threshold = 0.5;
  std::uint64_t min_primes = 1000;
};

struct ReportRow {
  double x = 0;
  std::uint64_t F = 0;
  std::uint64_t T11 = 0;
  std::uint64_t T1m1 = 0;
  std::uint64_t piK = 0;
  double env_uncond = 0;
  double env_grh = 0;
  double env_pcc = 0;
  DecompositionReport decomposition;

  double ratio(std::uint64_t count) const { return piK ? static_cast<double>(count) / static_cast<double>(piK) : 0.0; }
};

struct Report {
  std::vector<ReportRow> rows;
  VerdictReport verdict;
};

/// Every checkpoint must lie in (e^e, x_max]: throws DomainTooSmall or BeyondScan otherwise.
Report build_report(const TraceTable& t, const ReportOptions& opts);

std::string report_csv(const Report& r);

/// Self-contained SVG: counters and envelopes against x on log axes.
std::string report_svg(const Report& r, const std::string& title);

}  // namespace frobcount
