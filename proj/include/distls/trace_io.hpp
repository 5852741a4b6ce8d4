#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "distls/simnet.hpp"

namespace distls {

/// Column order of the trace CSV; part of the file format.
inline constexpr const char* kTraceColumns =
    "t,local_err_mean,comm_err_mean,global_err,local_bound,comm_bound,comm_fired,pre_invertible_count";

/// Data values: 12 significant digits.
std::string format_value(double v);
/// Echoed configuration values: 17 significant digits (round-trip exact).
std::string format_exact(double v);

struct BoundColumns {
  std::vector<std::optional<double>> local;  // indexed like the trace
  std::vector<std::optional<double>> comm;
};

/// Writes `# key=value` header lines, the column line, then one row per step.
void write_trace(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& header,
                 const ErrorTrace& trace, const BoundColumns& bounds);

}  // namespace distls
