#include "nightfusion/nightfusion.h"

#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <utility>

#include "clahe.hpp"
#include "colormap.hpp"
#include "error.hpp"
#include "fusion.hpp"
#include "guided.hpp"
#include "image.hpp"
#include "image_ops.hpp"
#include "metrics.hpp"
#include "netpbm.hpp"
#include "radiometry.hpp"
#include "servo.hpp"
#include "sim.hpp"
#include "trace.hpp"
#include "trace_csv.hpp"

struct nf_rgb_image {
  nf::RgbImage img;
};
struct nf_gray_image {
  nf::GrayImage img;
};
struct nf_thermal_frame {
  nf::ThermalFrame frame;
};
struct nf_fusion {
  nf::FusionConfig cfg;
  nf::FusionState state;
};
struct nf_servo {
  nf::PidGains gains;
  nf::ServoState state;
};
struct nf_trace {
  nf::TrackTrace records;
};

namespace {

thread_local std::string g_last_error = "";

nf_status to_status(const nf::Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case nf::ErrorCode::InvalidArgument:
      return NF_ERR_INVALID_ARGUMENT;
    case nf::ErrorCode::DimensionMismatch:
      return NF_ERR_DIMENSION_MISMATCH;
    case nf::ErrorCode::OutOfBounds:
      return NF_ERR_OUT_OF_BOUNDS;
    case nf::ErrorCode::Io:
      return NF_ERR_IO;
    case nf::ErrorCode::Format:
      return NF_ERR_FORMAT;
    case nf::ErrorCode::Parse:
      return NF_ERR_PARSE;
    case nf::ErrorCode::Empty:
      return NF_ERR_EMPTY;
  }
  return NF_ERR_INVALID_ARGUMENT;
}

nf_status fail(nf_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
nf_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const nf::Error& e) {
    return to_status(e);
  } catch (const std::bad_alloc&) {
    return fail(NF_ERR_INVALID_ARGUMENT, "out of memory");
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NF_ERR_INVALID_ARGUMENT;
  }
}

nf::PidGains from_c(const nf_pid_gains& g) { return {g.kp, g.ki, g.kd, g.dt}; }

nf::CameraGeometry from_c(const nf_camera_geometry& g) { return {g.hfov_deg, g.width_px}; }

nf::FusionConfig from_c(const nf_fusion_config& c) {
  nf::FusionConfig cfg;
  cfg.p_low = c.p_low;
  cfg.p_high = c.p_high;
  cfg.gamma = c.gamma;
  cfg.ema_a = c.ema_a;
  cfg.gauss_k = c.gauss_k;
  cfg.alpha = c.alpha;
  cfg.beta = c.beta;
  cfg.unsharp_strength = c.unsharp_strength;
  cfg.unsharp_k = c.unsharp_k;
  cfg.clahe_enabled = c.clahe_enabled != 0;
  cfg.clahe_clip = c.clahe_clip;
  cfg.clahe_grid = c.clahe_grid;
  cfg.guided_radius = c.guided_radius;
  cfg.guided_eps = c.guided_eps;
  cfg.guided_subsample = c.guided_subsample;
  cfg.guided_mode =
      c.guided_mode == NF_GUIDED_FAST ? nf::GuidedMode::Fast : nf::GuidedMode::Exact;
  return cfg;
}

nf::TargetMotion from_c(const nf_target_motion& m) {
  nf::TargetMotion motion;
  switch (m.kind) {
    case NF_MOTION_STATIC:
      motion.kind = nf::MotionKind::Static;
      break;
    case NF_MOTION_STEP:
      motion.kind = nf::MotionKind::Step;
      break;
    case NF_MOTION_LINEAR:
      motion.kind = nf::MotionKind::Linear;
      break;
    case NF_MOTION_SINUSOID:
      motion.kind = nf::MotionKind::Sinusoid;
      break;
    default:
      throw nf::Error(nf::ErrorCode::InvalidArgument, "unknown motion kind");
  }
  motion.initial_deg = m.initial_deg;
  motion.step_time_s = m.step_time_s;
  motion.step_deg = m.step_deg;
  motion.rate_deg_per_s = m.rate_deg_per_s;
  motion.amplitude_deg = m.amplitude_deg;
  motion.period_s = m.period_s;
  return motion;
}

nf_track_record to_c(const nf::TrackRecord& r) {
  nf_track_record rec;
  rec.frame = r.frame;
  rec.t_ms = r.t_ms;
  rec.detected = r.detected ? 1 : 0;
  rec.e_px = r.e_px;
  rec.theta_deg = r.theta_deg;
  rec.latency_ms = r.latency_ms;
  return rec;
}

constexpr const char* kNullArg = "null argument";

}  // namespace

extern "C" {

const char* nf_last_error(void) { return g_last_error.c_str(); }

const char* nf_version(void) { return "1.0.0"; }

/* ---- images ---- */

nf_status nf_rgb_create(int32_t width, int32_t height, nf_rgb_image** out) {
  if (!out) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    *out = new nf_rgb_image{nf::RgbImage(width, height)};
    return NF_OK;
  });
}

void nf_rgb_destroy(nf_rgb_image* img) { delete img; }

nf_status nf_rgb_size(const nf_rgb_image* img, int32_t* width, int32_t* height) {
  if (!img || !width || !height) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  *width = img->img.width;
  *height = img->img.height;
  return NF_OK;
}

nf_status nf_rgb_data(nf_rgb_image* img, float** data) {
  if (!img || !data) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  *data = img->img.data.data();
  return NF_OK;
}

nf_status nf_rgb_read_ppm(const char* path, nf_rgb_image** out) {
  if (!path || !out) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    *out = new nf_rgb_image{nf::read_ppm8(path)};
    return NF_OK;
  });
}

nf_status nf_rgb_write_ppm(const nf_rgb_image* img, const char* path) {
  if (!img || !path) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    nf::write_ppm8(img->img, path);
    return NF_OK;
  });
}

nf_status nf_gray_create(int32_t width, int32_t height, nf_gray_image** out) {
  if (!out) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    *out = new nf_gray_image{nf::GrayImage(width, height)};
    return NF_OK;
  });
}

void nf_gray_destroy(nf_gray_image* img) { delete img; }

nf_status nf_gray_size(const nf_gray_image* img, int32_t* width, int32_t* height) {
  if (!img || !width || !height) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  *width = img->img.width;
  *height = img->img.height;
  return NF_OK;
}

nf_status nf_gray_data(nf_gray_image* img, float** data) {
  if (!img || !data) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  *data = img->img.data.data();
  return NF_OK;
}

nf_status nf_gray_write_pgm(const nf_gray_image* img, const char* path) {
  if (!img || !path) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    nf::write_pgm8(img->img, path);
    return NF_OK;
  });
}

nf_status nf_gray_write_inferno_ppm(const nf_gray_image* img, const char* path) {
  if (!img || !path) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    nf::write_ppm8(nf::apply_inferno(img->img), path);
    return NF_OK;
  });
}

nf_status nf_thermal_create(int32_t width, int32_t height, nf_thermal_frame** out) {
  if (!out) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    *out = new nf_thermal_frame{nf::ThermalFrame(width, height)};
    return NF_OK;
  });
}

void nf_thermal_destroy(nf_thermal_frame* frame) { delete frame; }

nf_status nf_thermal_size(const nf_thermal_frame* frame, int32_t* width, int32_t* height) {
  if (!frame || !width || !height) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  *width = frame->frame.width;
  *height = frame->frame.height;
  return NF_OK;
}

nf_status nf_thermal_data(nf_thermal_frame* frame, uint16_t** data) {
  if (!frame || !data) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  *data = frame->frame.counts.data();
  return NF_OK;
}

nf_status nf_thermal_read_pgm(const char* path, nf_thermal_frame** out) {
  if (!path || !out) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    *out = new nf_thermal_frame{nf::read_pgm16(path)};
    return NF_OK;
  });
}

nf_status nf_thermal_write_pgm(const nf_thermal_frame* frame, const char* path) {
  if (!frame || !path) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    nf::write_pgm16(frame->frame, path);
    return NF_OK;
  });
}

/* ---- radiometry ---- */

double nf_raw_to_celsius(uint16_t counts) { return nf::raw_to_celsius(counts); }

nf_status nf_thermal_query_celsius(const nf_thermal_frame* frame, int32_t x, int32_t y,
                                   double* celsius) {
  if (!frame || !celsius) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    *celsius = nf::query_celsius(frame->frame, x, y);
    return NF_OK;
  });
}

/* ---- fusion ---- */

void nf_fusion_config_defaults(nf_fusion_config* cfg) {
  if (!cfg) return;
  const nf::FusionConfig d;
  cfg->p_low = d.p_low;
  cfg->p_high = d.p_high;
  cfg->gamma = d.gamma;
  cfg->ema_a = d.ema_a;
  cfg->gauss_k = d.gauss_k;
  cfg->alpha = d.alpha;
  cfg->beta = d.beta;
  cfg->unsharp_strength = d.unsharp_strength;
  cfg->unsharp_k = d.unsharp_k;
  cfg->clahe_enabled = d.clahe_enabled ? 1 : 0;
  cfg->clahe_clip = d.clahe_clip;
  cfg->clahe_grid = d.clahe_grid;
  cfg->guided_radius = d.guided_radius;
  cfg->guided_eps = d.guided_eps;
  cfg->guided_subsample = d.guided_subsample;
  cfg->guided_mode = d.guided_mode == nf::GuidedMode::Fast ? NF_GUIDED_FAST : NF_GUIDED_EXACT;
}

nf_status nf_fusion_create(const nf_fusion_config* cfg, nf_fusion** out) {
  if (!cfg || !out) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    nf::FusionConfig converted = from_c(*cfg);
    converted.validate();
    *out = new nf_fusion{converted, nf::FusionState{}};
    return NF_OK;
  });
}

void nf_fusion_destroy(nf_fusion* fusion) { delete fusion; }

nf_status nf_fusion_fuse(nf_fusion* fusion, const nf_rgb_image* visible,
                         const nf_thermal_frame* thermal, nf_rgb_image** fused_out,
                         nf_gray_image** l_hat_out) {
  if (!fusion || !visible || !thermal || !fused_out) {
    return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return guarded([&] {
    nf::FuseResult result =
        nf::fuse_frame(visible->img, thermal->frame, fusion->cfg, fusion->state);
    *fused_out = new nf_rgb_image{std::move(result.fused)};
    if (l_hat_out) *l_hat_out = new nf_gray_image{std::move(result.l_hat)};
    return NF_OK;
  });
}

nf_status nf_fusion_reset(nf_fusion* fusion) {
  if (!fusion) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  fusion->state = nf::FusionState{};
  return NF_OK;
}

/* ---- servo ---- */

nf_status nf_servo_create(const nf_pid_gains* gains, const nf_servo_limits* limits,
                          double theta_initial_deg, nf_servo** out) {
  if (!gains || !limits || !out) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    const nf::PidGains g = from_c(*gains);
    *out = new nf_servo{g, nf::make_servo(g, theta_initial_deg, limits->theta_min_deg,
                                          limits->theta_max_deg, limits->e_sum_limit)};
    return NF_OK;
  });
}

void nf_servo_destroy(nf_servo* servo) { delete servo; }

nf_status nf_servo_step(nf_servo* servo, double e_px, double* theta_deg) {
  if (!servo || !theta_deg) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    *theta_deg = nf::pid_step(servo->state, servo->gains, e_px);
    return NF_OK;
  });
}

nf_status nf_servo_hold(nf_servo* servo, double* theta_deg) {
  if (!servo || !theta_deg) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  *theta_deg = nf::hold_on_miss(servo->state);
  return NF_OK;
}

nf_status nf_servo_angle(const nf_servo* servo, double* theta_deg) {
  if (!servo || !theta_deg) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  *theta_deg = servo->state.theta;
  return NF_OK;
}

/* ---- tracking simulation ---- */

void nf_trace_destroy(nf_trace* trace) { delete trace; }

nf_status nf_trace_size(const nf_trace* trace, int64_t* count) {
  if (!trace || !count) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  *count = static_cast<int64_t>(trace->records.size());
  return NF_OK;
}

nf_status nf_trace_at(const nf_trace* trace, int64_t index, nf_track_record* out) {
  if (!trace || !out) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  if (index < 0 || index >= static_cast<int64_t>(trace->records.size())) {
    return fail(NF_ERR_OUT_OF_BOUNDS, "trace index out of range");
  }
  *out = to_c(trace->records[static_cast<size_t>(index)]);
  return NF_OK;
}

nf_status nf_trace_from_records(const nf_track_record* records, int64_t count, nf_trace** out) {
  if (!out || (!records && count > 0)) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  if (count < 0) return fail(NF_ERR_INVALID_ARGUMENT, "negative record count");
  return guarded([&] {
    nf::TrackTrace trace;
    trace.reserve(static_cast<size_t>(count));
    for (int64_t i = 0; i < count; ++i) {
      nf::TrackRecord r;
      r.frame = records[i].frame;
      r.t_ms = records[i].t_ms;
      r.detected = records[i].detected != 0;
      r.e_px = records[i].e_px;
      r.theta_deg = records[i].theta_deg;
      r.latency_ms = records[i].latency_ms;
      trace.push_back(r);
    }
    *out = new nf_trace{std::move(trace)};
    return NF_OK;
  });
}

nf_status nf_trace_read_csv(const char* path, nf_trace** out) {
  if (!path || !out) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    *out = new nf_trace{nf::read_trace_csv(path)};
    return NF_OK;
  });
}

nf_status nf_trace_write_csv(const nf_trace* trace, const char* path) {
  if (!trace || !path) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    nf::write_trace_csv(trace->records, path);
    return NF_OK;
  });
}

nf_status nf_simulate(const nf_sim_config* sim, const nf_pid_gains* gains,
                      const nf_servo_limits* limits, double theta_initial_deg,
                      const nf_target_motion* motion, const nf_detector_model* detector,
                      nf_trace** out) {
  if (!sim || !gains || !limits || !motion || !detector || !out) {
    return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  }
  return guarded([&] {
    const nf::PidGains g = from_c(*gains);
    const nf::ServoState servo = nf::make_servo(g, theta_initial_deg, limits->theta_min_deg,
                                                limits->theta_max_deg, limits->e_sum_limit);
    nf::SimConfig cfg;
    cfg.geometry = from_c(sim->geometry);
    cfg.frames = sim->frames;
    cfg.dt_s = sim->dt_s;
    cfg.latency_mean_ms = sim->latency_mean_ms;
    cfg.latency_sigma_ms = sim->latency_sigma_ms;
    nf::DetectorModel model;
    model.p_detect = detector->p_detect;
    model.noise_sigma_px = detector->noise_sigma_px;
    model.seed = detector->seed;
    *out = new nf_trace{nf::run_closed_loop(cfg, g, servo, from_c(*motion), model)};
    return NF_OK;
  });
}

/* ---- metrics ---- */

nf_status nf_trace_stats(const nf_trace* trace, const nf_camera_geometry* geometry,
                         nf_track_stats* out) {
  if (!trace || !geometry || !out) return fail(NF_ERR_INVALID_ARGUMENT, kNullArg);
  return guarded([&] {
    const nf::TrackStats s = nf::summarize(trace->records, from_c(*geometry));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out->has_error_stats = s.e_px.has_value() ? 1 : 0;
    out->e_px_mean = s.e_px ? s.e_px->mean : nan;
    out->e_px_std = s.e_px ? s.e_px->stddev : nan;
    out->e_px_median = s.e_px ? s.e_px->median : nan;
    out->e_px_iqr = s.e_px ? s.e_px->iqr : nan;
    out->e_deg_mean = s.e_deg_mean;
    out->e_deg_median = s.e_deg_median;
    out->detection_rate_pct = s.detection_rate_pct;
    out->fps_mean = s.fps.mean;
    out->fps_std = s.fps.stddev;
    out->latency_mean_ms = s.latency.mean;
    out->latency_std_ms = s.latency.stddev;
    out->latency_median_ms = s.latency.median;
    out->n_frames = s.n_frames;
    out->n_detected = s.n_detected;
    return NF_OK;
  });
}

} /* extern "C" */
