#include "sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rng.hpp"

namespace nf {

namespace {

// Draw slots within a frame; keeps streams independent of branch order.
constexpr uint32_t kSlotDetect = 0;
constexpr uint32_t kSlotNoise = 1;    // and 2
constexpr uint32_t kSlotLatency = 3;  // and 4

void validate_motion(const TargetMotion& motion) {
  if (motion.kind == MotionKind::Sinusoid && !(motion.period_s > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sinusoid period must be > 0");
  }
}

void validate_detector(const DetectorModel& model) {
  if (!(model.p_detect >= 0.0 && model.p_detect <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "p_detect must be in [0,1]");
  }
  if (!(model.noise_sigma_px >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "noise sigma must be >= 0");
  }
}

}  // namespace

double target_azimuth(const TargetMotion& motion, double t_s) {
  validate_motion(motion);
  switch (motion.kind) {
    case MotionKind::Static:
      return motion.initial_deg;
    case MotionKind::Step:
      return motion.initial_deg + (t_s >= motion.step_time_s ? motion.step_deg : 0.0);
    case MotionKind::Linear:
      return motion.initial_deg + motion.rate_deg_per_s * t_s;
    case MotionKind::Sinusoid:
      return motion.initial_deg +
             motion.amplitude_deg * std::sin(2.0 * 3.141592653589793238462643 * t_s /
                                             motion.period_s);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown motion kind");
}

double project_to_pixel(double azimuth_deg, double pan_deg, const CameraGeometry& geometry) {
  validate_geometry(geometry);
  return geometry.width_px / 2.0 +
         (azimuth_deg - pan_deg) * geometry.width_px / geometry.hfov_deg;
}

std::optional<double> detect(double x_true, const DetectorModel& model, int64_t frame_index,
                             int width_px) {
  validate_detector(model);
  if (width_px < 1) throw Error(ErrorCode::InvalidArgument, "width must be >= 1");
  if (!(x_true >= 0.0 && x_true < width_px)) return std::nullopt;
  const FrameRng rng(model.seed, static_cast<uint64_t>(frame_index));
  if (rng.uniform(kSlotDetect) >= model.p_detect) return std::nullopt;
  double x = x_true + rng.gaussian(kSlotNoise) * model.noise_sigma_px;
  return std::clamp(x, 0.0, static_cast<double>(width_px - 1));
}

TrackTrace run_closed_loop(const SimConfig& sim, const PidGains& gains, ServoState servo,
                           const TargetMotion& motion, const DetectorModel& model) {
  validate_geometry(sim.geometry);
  validate_gains(gains);
  validate_motion(motion);
  validate_detector(model);
  if (sim.frames < 1) throw Error(ErrorCode::InvalidArgument, "frames must be >= 1");
  if (!(sim.dt_s > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be > 0");
  if (!(sim.latency_mean_ms >= 0.0) || !(sim.latency_sigma_ms >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "latency parameters must be >= 0");
  }
  if (gains.dt != sim.dt_s) {
    throw Error(ErrorCode::InvalidArgument, "controller dt must match simulation dt");
  }

  TrackTrace trace;
  trace.reserve(static_cast<size_t>(sim.frames));
  const double x_center = sim.geometry.width_px / 2.0;
  for (int64_t frame = 0; frame < sim.frames; ++frame) {
    const double t_s = static_cast<double>(frame) * sim.dt_s;
    const double azimuth = target_azimuth(motion, t_s);
    const double x_true = project_to_pixel(azimuth, servo.theta, sim.geometry);
    const std::optional<double> meas =
        detect(x_true, model, frame, sim.geometry.width_px);
    const FrameRng rng(model.seed, static_cast<uint64_t>(frame));
    const double latency =
        std::max(0.0, sim.latency_mean_ms + rng.gaussian(kSlotLatency) * sim.latency_sigma_ms);
    TrackRecord rec;
    rec.frame = frame;
    rec.t_ms = t_s * 1000.0;
    rec.latency_ms = latency;
    if (meas.has_value()) {
      rec.detected = true;
      rec.e_px = pixel_error(*meas, x_center);
      rec.theta_deg = pid_step(servo, gains, rec.e_px);
    } else {
      rec.detected = false;
      rec.e_px = std::numeric_limits<double>::quiet_NaN();
      rec.theta_deg = hold_on_miss(servo);
    }
    trace.push_back(rec);
  }
  return trace;
}

}  // namespace nf
