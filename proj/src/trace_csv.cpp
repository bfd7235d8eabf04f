#include "trace_csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace nf {

namespace {

constexpr const char* kHeader = "frame,t_ms,detected,e_px,theta_deg,latency_ms";

[[noreturn]] void parse_fail(const std::string& path, size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, path + ": line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(const std::string& field, const std::string& path, size_t line,
                    const char* name) {
  if (field.empty()) parse_fail(path, line, std::string("empty ") + name + " field");
  size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &consumed);
  } catch (const std::exception&) {
    parse_fail(path, line, std::string("bad ") + name + " value '" + field + "'");
  }
  if (consumed != field.size()) {
    parse_fail(path, line, std::string("bad ") + name + " value '" + field + "'");
  }
  return value;
}

int64_t parse_int(const std::string& field, const std::string& path, size_t line,
                  const char* name) {
  if (field.empty()) parse_fail(path, line, std::string("empty ") + name + " field");
  size_t consumed = 0;
  int64_t value = 0;
  try {
    value = std::stoll(field, &consumed);
  } catch (const std::exception&) {
    parse_fail(path, line, std::string("bad ") + name + " value '" + field + "'");
  }
  if (consumed != field.size()) {
    parse_fail(path, line, std::string("bad ") + name + " value '" + field + "'");
  }
  return value;
}

}  // namespace

std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void write_trace_csv(const TrackTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, path + ": cannot open for writing");
  out << kHeader << "\n";
  for (const TrackRecord& r : trace) {
    out << r.frame << "," << format_g6(r.t_ms) << "," << (r.detected ? 1 : 0) << ",";
    if (r.detected) out << format_g6(r.e_px);
    out << "," << format_g6(r.theta_deg) << "," << format_g6(r.latency_ms) << "\n";
  }
  if (!out) throw Error(ErrorCode::Io, path + ": write failed");
}

TrackTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, path + ": cannot open for reading");
  std::string line;
  if (!std::getline(in, line)) parse_fail(path, 1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) parse_fail(path, 1, "bad header");
  TrackTrace trace;
  size_t line_no = 1;
  double prev_t = -std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (in.peek() == EOF) break;
      parse_fail(path, line_no, "empty line");
    }
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 6) {
      parse_fail(path, line_no,
                 "expected 6 fields, got " + std::to_string(fields.size()));
    }
    TrackRecord rec;
    rec.frame = parse_int(fields[0], path, line_no, "frame");
    rec.t_ms = parse_double(fields[1], path, line_no, "t_ms");
    const int64_t det = parse_int(fields[2], path, line_no, "detected");
    if (det != 0 && det != 1) parse_fail(path, line_no, "detected must be 0 or 1");
    rec.detected = det == 1;
    if (rec.detected) {
      rec.e_px = parse_double(fields[3], path, line_no, "e_px");
      if (!std::isfinite(rec.e_px)) parse_fail(path, line_no, "e_px must be finite");
    } else {
      if (!fields[3].empty()) {
        parse_fail(path, line_no, "e_px must be empty when detected is 0");
      }
      rec.e_px = std::numeric_limits<double>::quiet_NaN();
    }
    rec.theta_deg = parse_double(fields[4], path, line_no, "theta_deg");
    rec.latency_ms = parse_double(fields[5], path, line_no, "latency_ms");
    if (!(rec.t_ms > prev_t)) {
      parse_fail(path, line_no, "t_ms must be strictly increasing");
    }
    prev_t = rec.t_ms;
    trace.push_back(rec);
  }
  return trace;
}

}  // namespace nf
