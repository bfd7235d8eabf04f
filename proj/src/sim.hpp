#pragma once

#include <cstdint>
#include <optional>

#include "servo.hpp"
#include "trace.hpp"

namespace nf {

enum class MotionKind { Static, Step, Linear, Sinusoid };

struct TargetMotion {
  MotionKind kind = MotionKind::Static;
  double initial_deg = 0.0;
  double step_time_s = 0.0;  // Step
  double step_deg = 0.0;     // Step
  double rate_deg_per_s = 0.0;  // Linear
  double amplitude_deg = 0.0;   // Sinusoid
  double period_s = 1.0;        // Sinusoid
};

struct DetectorModel {
  double p_detect = 1.0;
  double noise_sigma_px = 0.0;
  uint64_t seed = 0;
};

struct SimConfig {
  CameraGeometry geometry;
  int64_t frames = 1;
  double dt_s = 1.0 / 15.0;
  double latency_mean_ms = 0.0;
  double latency_sigma_ms = 0.0;
};

double target_azimuth(const TargetMotion& motion, double t_s);

// Pinhole-linear: x = W/2 + (azimuth - pan) * W / hfov.
double project_to_pixel(double azimuth_deg, double pan_deg, const CameraGeometry& geometry);

// Measured pixel position, or nothing when the target is out of frame or the
// detector misses. Deterministic in (seed, frame_index).
std::optional<double> detect(double x_true, const DetectorModel& model, int64_t frame_index,
                             int width_px);

// Per-frame loop: move target, project, detect, PID step or hold.
TrackTrace run_closed_loop(const SimConfig& sim, const PidGains& gains, ServoState servo,
                           const TargetMotion& motion, const DetectorModel& model);

}  // namespace nf
