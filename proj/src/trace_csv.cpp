#include "cqed/trace_csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cqed {

namespace {

const std::vector<std::string> kSingleHeader{"tau", "W"};
const std::vector<std::string> kCompareHeader{"tau", "W_analytic", "W_transformed", "W_full"};

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& field, std::size_t line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty() || !std::isfinite(value)) {
    throw TraceFormatError("line " + std::to_string(line_no) + ": not a finite number: '" + field + "'");
  }
  return value;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

const std::vector<double>& Trace::column(const std::string& name) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == name) return data[c];
  }
  throw TraceFormatError("trace has no column '" + name + "'");
}

std::optional<std::string> Trace::comment_value(const std::string& key) const {
  for (const std::string& line : comments) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    if (trim(line.substr(0, eq)) == key) return trim(line.substr(eq + 1));
  }
  return std::nullopt;
}

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::logic_error("format_double: buffer too small");
  return std::string(buf, ptr);
}

void write_trace(std::ostream& out, const Trace& trace) {
  if (trace.columns != kSingleHeader && trace.columns != kCompareHeader) {
    throw TraceFormatError("write_trace: unsupported column set");
  }
  if (trace.data.size() != trace.columns.size()) throw TraceFormatError("write_trace: column count mismatch");
  for (const auto& col : trace.data) {
    if (col.size() != trace.rows()) throw TraceFormatError("write_trace: ragged columns");
  }
  for (const std::string& c : trace.comments) {
    if (c.find('\n') != std::string::npos) throw TraceFormatError("write_trace: comment contains a newline");
    out << "# " << c << '\n';
  }
  for (std::size_t c = 0; c < trace.columns.size(); ++c) out << (c ? "," : "") << trace.columns[c];
  out << '\n';
  for (std::size_t r = 0; r < trace.rows(); ++r) {
    for (std::size_t c = 0; c < trace.columns.size(); ++c) out << (c ? "," : "") << format_double(trace.data[c][r]);
    out << '\n';
  }
}

std::string trace_to_string(const Trace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

void write_trace_file(const std::string& path, const Trace& trace) {
  const std::string text = trace_to_string(trace);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Trace parse_trace(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') throw TraceFormatError("line " + std::to_string(line_no) + ": CRLF line ending");
    if (!header_seen) {
      if (!line.empty() && line.front() == '#') {
        std::string body = line.substr(1);
        if (!body.empty() && body.front() == ' ') body.erase(0, 1);
        trace.comments.push_back(body);
        continue;
      }
      trace.columns = split(line, ',');
      if (trace.columns != kSingleHeader && trace.columns != kCompareHeader) {
        throw TraceFormatError("line " + std::to_string(line_no) + ": unrecognized header '" + line + "'");
      }
      trace.data.assign(trace.columns.size(), {});
      header_seen = true;
      continue;
    }
    if (!line.empty() && line.front() == '#') {
      throw TraceFormatError("line " + std::to_string(line_no) + ": comment after header");
    }
    const auto fields = split(line, ',');
    if (fields.size() != trace.columns.size()) {
      throw TraceFormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(trace.columns.size()) +
                             " fields, got " + std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) trace.data[c].push_back(parse_double(fields[c], line_no));
  }
  if (!header_seen) throw TraceFormatError("missing header row");
  if (trace.rows() == 0) throw TraceFormatError("no data rows");
  const auto& tau = trace.data.front();
  for (std::size_t r = 1; r < tau.size(); ++r) {
    if (!(tau[r] > tau[r - 1])) throw TraceFormatError("tau column is not strictly increasing");
  }
  return trace;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceFormatError("cannot open '" + path + "'");
  return parse_trace(in);
}

}  // namespace cqed
