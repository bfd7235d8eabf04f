#include "servo.hpp"

#include <algorithm>
#include <cmath>

namespace nf {

void validate_gains(const PidGains& gains) {
  if (!(gains.dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be > 0");
  if (!std::isfinite(gains.kp) || !std::isfinite(gains.ki) || !std::isfinite(gains.kd)) {
    throw Error(ErrorCode::InvalidArgument, "gains must be finite");
  }
}

void validate_geometry(const CameraGeometry& geometry) {
  if (!(geometry.hfov_deg > 0.0)) throw Error(ErrorCode::InvalidArgument, "hfov must be > 0");
  if (geometry.width_px < 1) throw Error(ErrorCode::InvalidArgument, "width must be >= 1");
}

double error_to_degrees(double e_px, const CameraGeometry& geometry) {
  validate_geometry(geometry);
  return e_px * geometry.hfov_deg / geometry.width_px;
}

ServoState make_servo(const PidGains& gains, double theta_initial, double theta_min,
                      double theta_max, double e_sum_limit) {
  validate_gains(gains);
  if (!(theta_min <= theta_max)) {
    throw Error(ErrorCode::InvalidArgument, "theta_min must not exceed theta_max");
  }
  ServoState state;
  state.theta = std::clamp(theta_initial, theta_min, theta_max);
  state.theta_min = theta_min;
  state.theta_max = theta_max;
  if (e_sum_limit > 0.0) {
    state.e_sum_limit = e_sum_limit;
  } else if (gains.ki != 0.0) {
    state.e_sum_limit = std::abs(theta_max / gains.ki);
  }
  return state;
}

double pid_step(ServoState& state, const PidGains& gains, double e) {
  validate_gains(gains);
  state.e_sum += e * gains.dt;
  state.e_sum = std::clamp(state.e_sum, -state.e_sum_limit, state.e_sum_limit);
  const double e_diff = (e - state.e_prev) / gains.dt;
  const double raw =
      state.theta + gains.kp * e + gains.ki * state.e_sum + gains.kd * e_diff;
  state.theta = std::clamp(raw, state.theta_min, state.theta_max);
  state.e_prev = e;
  return state.theta;
}

}  // namespace nf
