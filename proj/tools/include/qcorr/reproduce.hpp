#pragma once

// Desk-scale reruns of the published tables.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qcorr::cli {

struct ReproduceOptions {
  std::optional<std::uint64_t> samples;  // overrides every per-row default
  std::uint64_t seed = 20240601;
  int workers = 1;
  int max_n = 6;
};

struct ComparisonRow {
  std::string row;       // e.g. "N=3"
  std::string quantity;  // e.g. "mean"
  double reference = 0.0;
  double value = 0.0;
  double lo = 0.0;  // accepted interval for value
  double hi = 0.0;
  std::uint64_t samples = 0;  // 0 for closed forms

  bool pass() const noexcept { return value >= lo && value <= hi; }
};

const std::vector<std::string>& reproduce_targets();

/// Throws UsageError for an unknown target. Progress notes go to `log`.
std::vector<ComparisonRow> reproduce(const std::string& target, const ReproduceOptions& opts,
                                     std::ostream& log);

void print_comparison(const std::string& target, const std::vector<ComparisonRow>& rows,
                      std::ostream& out);

}  // namespace qcorr::cli
