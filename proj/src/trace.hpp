#pragma once

#include <cstdint>
#include <vector>

namespace nf {

struct TrackRecord {
  int64_t frame = 0;
  double t_ms = 0.0;
  bool detected = false;
  double e_px = 0.0;  // NaN on missed frames
  double theta_deg = 0.0;
  double latency_ms = 0.0;
};

using TrackTrace = std::vector<TrackRecord>;

}  // namespace nf
