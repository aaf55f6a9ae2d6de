// CSV traces: `tau,W` or `tau,W_analytic,W_transformed,W_full`, LF line
// endings, shortest round-trip doubles, `#` comments only above the header.
#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cqed {

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Trace {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> columns;   // first column is always "tau"
  std::vector<std::vector<double>> data;  // data[c][row]

  std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
  const std::vector<double>& column(const std::string& name) const;

  /// Value of a `key = value` comment, if present.
  std::optional<std::string> comment_value(const std::string& key) const;
};

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

void write_trace(std::ostream& out, const Trace& trace);
std::string trace_to_string(const Trace& trace);
void write_trace_file(const std::string& path, const Trace& trace);

/// Accepts only the two emitted headers. Throws TraceFormatError.
Trace parse_trace(std::istream& in);
Trace read_trace_file(const std::string& path);

}  // namespace cqed
