#pragma once

#include <limits>

#include "error.hpp"

namespace nf {

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double dt = 1.0 / 15.0;  // seconds per step
};

struct CameraGeometry {
  double hfov_deg = 60.0;
  int width_px = 640;
};

struct ServoState {
  double theta = 0.0;  // degrees
  double e_prev = 0.0;
  double e_sum = 0.0;
  double theta_min = -90.0;
  double theta_max = 90.0;
  double e_sum_limit = std::numeric_limits<double>::infinity();
};

void validate_gains(const PidGains& gains);
void validate_geometry(const CameraGeometry& geometry);

// e_sum_limit <= 0 selects theta_max / ki (unbounded when ki == 0).
ServoState make_servo(const PidGains& gains, double theta_initial, double theta_min,
                      double theta_max, double e_sum_limit);

inline double pixel_error(double x_target, double x_center) { return x_target - x_center; }

double error_to_degrees(double e_px, const CameraGeometry& geometry);

// One PID update; integrates, clamps the integral, differentiates against the
// previous error, and clamps the commanded angle to the limits.
double pid_step(ServoState& state, const PidGains& gains, double e);

// Missed detection: nothing moves, nothing accumulates.
inline double hold_on_miss(const ServoState& state) { return state.theta; }

}  // namespace nf
