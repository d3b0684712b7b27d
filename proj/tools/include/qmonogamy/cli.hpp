#pragma once

// Command-line front end. Exit codes: 0 pass, 1 inequality violation,
// 2 usage, configuration or I/O error.

#include <iosfwd>
#include <string>
#include <vector>

#include "qmonogamy/experiments.hpp"

namespace qmono::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kUsageError = 2 };

/// 12 significant digits in scientific notation, independent of locale.
std::string format_number(double x);

std::string rows_to_csv(const std::vector<SweepRow>& rows);
std::string rows_to_json(const std::string& command, const std::vector<SweepRow>& rows);
/// Minimal line chart, one polyline per column.
std::string rows_to_svg(const std::string& title, const std::vector<SweepRow>& rows);

std::string summary_to_json(const VerifyConfig& cfg, const VerifySummary& summary);

/// Parses {"kraus": [op, ...]} where each op is a list of rows and each entry
/// is a number or a [re, im] pair. Throws ChannelValidationError when the
/// operators are not trace preserving.
KrausChannel channel_from_json(const std::string& text);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmono::cli
