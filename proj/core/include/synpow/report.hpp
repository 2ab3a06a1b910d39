#pragma once

#include <string>
#include <vector>

#include "synpow/metrics.hpp"

namespace synpow {

// Locale-independent number rendering (std::to_chars underneath).
std::string fmt_u64(std::uint64_t v);
std::string fmt_fixed(double v, int precision);  // fixed decimals
std::string fmt_double(double v);                // shortest round-trip form

// One row per (run, client), rows in input order; runs carry their
// run-level counters on every row.
std::string per_run_csv(const std::vector<RunMetrics>& runs);

// One row per LAN (plus "overall") per summary.
std::string summary_csv(const std::vector<QuadSummary>& summaries);

std::string analytic_csv(const std::vector<AnalyticRow>& rows);

// Per-window controller decision log, one row per (prefix, window).
std::string decisions_csv(const std::vector<RunMetrics>& runs);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace synpow
