#pragma once
// Executes a RunConfig and writes the CSV report.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "glt/config.hpp"

namespace glt {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitInfeasible = 2;

/// CSV abort_flag values.
int abort_code(AbortReason r);

enum class Command { keyrate, sweep };

struct ReportRow {
  std::string variant;
  KeyRatePoint point;
};

/// Evaluates every variant at the keyrate distance or across the sweep grid.
/// `mode` overrides the mode of every variant when set.
std::vector<ReportRow> execute(const RunConfig& cfg, Command cmd,
                               std::optional<Mode> mode = std::nullopt);

/// Header plus one row per point; numbers use 10 significant digits.
void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);

/// kExitInfeasible if any row aborted on an empty region, else kExitOk.
int exit_code(const std::vector<ReportRow>& rows);

}  // namespace glt
