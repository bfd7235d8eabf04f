#pragma once

#include <optional>

#include "servo.hpp"
#include "trace.hpp"

namespace nf {

struct AbsErrorStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
  double median = 0.0;
  double iqr = 0.0;  // P75 - P25
};

struct FpsStats {
  double mean = 0.0;
  double stddev = 0.0;
};

struct LatencyStats {
  double mean = 0.0;
  double stddev = 0.0;
  double median = 0.0;
};

struct TrackStats {
  std::optional<AbsErrorStats> e_px;
  double e_deg_mean = 0.0;    // NaN when no detections
  double e_deg_median = 0.0;  // NaN when no detections
  double detection_rate_pct = 0.0;
  FpsStats fps;
  LatencyStats latency;
  int64_t n_frames = 0;
  int64_t n_detected = 0;
};

// |e| over detected frames only; empty when nothing was detected.
std::optional<AbsErrorStats> abs_error_stats(const TrackTrace& trace);

double detection_rate(const TrackTrace& trace);  // percent

// Instantaneous rates 1000 / (t[i+1] - t[i]); needs >= 2 records.
FpsStats fps_stats(const TrackTrace& trace);

LatencyStats latency_stats(const TrackTrace& trace);

TrackStats summarize(const TrackTrace& trace, const CameraGeometry& geometry);

}  // namespace nf
