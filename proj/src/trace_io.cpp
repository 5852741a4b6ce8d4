#include "distls/trace_io.hpp"

#include <cstdio>

namespace distls {

namespace {

std::string format_with(const char* fmt, double v) {
  if (v == 0.0) return "0";  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::string format_value(double v) { return format_with("%.12g", v); }

std::string format_exact(double v) { return format_with("%.17g", v); }

void write_trace(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& header,
                 const ErrorTrace& trace, const BoundColumns& bounds) {
  for (const auto& [key, value] : header) out << "# " << key << '=' << value << '\n';
  out << kTraceColumns << '\n';
  auto opt = [](const std::vector<std::optional<double>>& col, std::size_t k) -> std::string {
    if (k >= col.size() || !col[k]) return "";
    return format_value(*col[k]);
  };
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const TraceRow& r = trace[k];
    out << r.t << ',' << format_value(r.local_err) << ',' << format_value(r.comm_err) << ','
        << format_value(r.global_err) << ',' << opt(bounds.local, k) << ',' << opt(bounds.comm, k) << ','
        << (r.comm_fired ? 1 : 0) << ',' << r.pre_invertible_count << '\n';
  }
}

}  // namespace distls
