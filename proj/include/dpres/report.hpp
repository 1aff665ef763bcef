#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dpres/finding.hpp"

namespace dpres {

enum class ReportFormat { Json, Text };

/// Outcome of one CLI command. Passes iff there are no violations.
struct Report {
  std::string command;
  /// Input name -> content digest.
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::int64_t> metrics;
  std::vector<Finding> violations;

  bool pass() const noexcept { return violations.empty(); }
  int exit_status() const noexcept { return pass() ? 0 : 1; }
};

/// "sha256:<hex>" of the bytes.
std::string digest(std::string_view bytes);

/// Deterministic rendering: sorted keys, violations in insertion order.
/// Throws InvariantViolation when node_count, edge_count or pair_count is
/// missing from the metrics.
std::string emit_report(const Report& report, ReportFormat format);

ReportFormat parse_report_format(std::string_view name);

}  // namespace dpres
