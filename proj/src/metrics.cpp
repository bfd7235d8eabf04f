#include "metrics.hpp"

#include <cmath>
#include <limits>

#include "image_ops.hpp"

namespace nf {

namespace {

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double population_std(const std::vector<double>& v, double mean) {
  double sq = 0.0;
  for (double x : v) sq += (x - mean) * (x - mean);
  return std::sqrt(sq / static_cast<double>(v.size()));
}

std::vector<double> detected_abs_errors(const TrackTrace& trace) {
  std::vector<double> abs_e;
  for (const TrackRecord& r : trace) {
    if (r.detected) abs_e.push_back(std::abs(r.e_px));
  }
  return abs_e;
}

}  // namespace

std::optional<AbsErrorStats> abs_error_stats(const TrackTrace& trace) {
  if (trace.empty()) throw Error(ErrorCode::Empty, "empty trace");
  const std::vector<double> abs_e = detected_abs_errors(trace);
  if (abs_e.empty()) return std::nullopt;
  AbsErrorStats s;
  s.mean = mean_of(abs_e);
  s.stddev = population_std(abs_e, s.mean);
  s.median = percentile(abs_e, 50.0);
  s.iqr = percentile(abs_e, 75.0) - percentile(abs_e, 25.0);
  return s;
}

double detection_rate(const TrackTrace& trace) {
  if (trace.empty()) throw Error(ErrorCode::Empty, "empty trace");
  int64_t detected = 0;
  for (const TrackRecord& r : trace) detected += r.detected ? 1 : 0;
  return 100.0 * static_cast<double>(detected) / static_cast<double>(trace.size());
}

FpsStats fps_stats(const TrackTrace& trace) {
  if (trace.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "fps needs at least 2 records");
  }
  std::vector<double> rates;
  rates.reserve(trace.size() - 1);
  for (size_t i = 0; i + 1 < trace.size(); ++i) {
    const double dt = trace[i + 1].t_ms - trace[i].t_ms;
    if (!(dt > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "timestamps must be strictly increasing");
    }
    rates.push_back(1000.0 / dt);
  }
  FpsStats s;
  s.mean = mean_of(rates);
  s.stddev = population_std(rates, s.mean);
  return s;
}

LatencyStats latency_stats(const TrackTrace& trace) {
  if (trace.empty()) throw Error(ErrorCode::Empty, "empty trace");
  std::vector<double> lat;
  lat.reserve(trace.size());
  for (const TrackRecord& r : trace) lat.push_back(r.latency_ms);
  LatencyStats s;
  s.mean = mean_of(lat);
  s.stddev = population_std(lat, s.mean);
  s.median = percentile(lat, 50.0);
  return s;
}

TrackStats summarize(const TrackTrace& trace, const CameraGeometry& geometry) {
  validate_geometry(geometry);
  TrackStats stats;
  stats.n_frames = static_cast<int64_t>(trace.size());
  stats.e_px = abs_error_stats(trace);
  stats.detection_rate_pct = detection_rate(trace);
  stats.fps = fps_stats(trace);
  stats.latency = latency_stats(trace);
  for (const TrackRecord& r : trace) stats.n_detected += r.detected ? 1 : 0;
  if (stats.e_px.has_value()) {
    std::vector<double> deg;
    for (const TrackRecord& r : trace) {
      if (r.detected) deg.push_back(std::abs(error_to_degrees(r.e_px, geometry)));
    }
    stats.e_deg_mean = mean_of(deg);
    stats.e_deg_median = percentile(deg, 50.0);
  } else {
    stats.e_deg_mean = std::numeric_limits<double>::quiet_NaN();
    stats.e_deg_median = std::numeric_limits<double>::quiet_NaN();
  }
  return stats;
}

}  // namespace nf
