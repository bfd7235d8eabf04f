/* nightfusion: thermal-guided low-light video enhancement and pan tracking.
 *
 * C API for the nightfusion core. All functions return nf_status; results are
 * passed through out-parameters. Handles are opaque and must be released with
 * the matching destroy function. Handles are not thread-safe; distinct handles
 * may be used from distinct threads concurrently.
 */
#ifndef NIGHTFUSION_H
#define NIGHTFUSION_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NF_API __declspec(dllexport)
#else
#define NF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nf_status {
  NF_OK = 0,
  NF_ERR_INVALID_ARGUMENT = 1, /* bad parameter value or null pointer */
  NF_ERR_DIMENSION_MISMATCH = 2,
  NF_ERR_OUT_OF_BOUNDS = 3,
  NF_ERR_IO = 4,     /* file unreadable / unwritable */
  NF_ERR_FORMAT = 5, /* file content not in the expected format */
  NF_ERR_PARSE = 6,  /* malformed text input (CSV) */
  NF_ERR_EMPTY = 7   /* operation needs data and got none */
} nf_status;

/* Message describing the most recent error on this thread. Valid until the
 * next failing nightfusion call on the same thread. Never NULL. */
NF_API const char* nf_last_error(void);

NF_API const char* nf_version(void);

/* ---- images ------------------------------------------------------------ */

/* Interleaved RGB, float in [0,1]. */
typedef struct nf_rgb_image nf_rgb_image;
/* Single channel, float in [0,1]. */
typedef struct nf_gray_image nf_gray_image;
/* Raw 16-bit thermal counts. */
typedef struct nf_thermal_frame nf_thermal_frame;

NF_API nf_status nf_rgb_create(int32_t width, int32_t height, nf_rgb_image** out);
NF_API void nf_rgb_destroy(nf_rgb_image* img);
NF_API nf_status nf_rgb_size(const nf_rgb_image* img, int32_t* width, int32_t* height);
/* Pixel data, row-major, 3 floats per pixel. Valid for the handle lifetime. */
NF_API nf_status nf_rgb_data(nf_rgb_image* img, float** data);
NF_API nf_status nf_rgb_read_ppm(const char* path, nf_rgb_image** out);
NF_API nf_status nf_rgb_write_ppm(const nf_rgb_image* img, const char* path);

NF_API nf_status nf_gray_create(int32_t width, int32_t height, nf_gray_image** out);
NF_API void nf_gray_destroy(nf_gray_image* img);
NF_API nf_status nf_gray_size(const nf_gray_image* img, int32_t* width, int32_t* height);
NF_API nf_status nf_gray_data(nf_gray_image* img, float** data);
NF_API nf_status nf_gray_write_pgm(const nf_gray_image* img, const char* path);
/* Writes the image through the inferno colormap with a fixed [0,1] range. */
NF_API nf_status nf_gray_write_inferno_ppm(const nf_gray_image* img, const char* path);

NF_API nf_status nf_thermal_create(int32_t width, int32_t height, nf_thermal_frame** out);
NF_API void nf_thermal_destroy(nf_thermal_frame* frame);
NF_API nf_status nf_thermal_size(const nf_thermal_frame* frame, int32_t* width, int32_t* height);
NF_API nf_status nf_thermal_data(nf_thermal_frame* frame, uint16_t** data);
/* 16-bit big-endian PGM (maxval 65535). */
NF_API nf_status nf_thermal_read_pgm(const char* path, nf_thermal_frame** out);
NF_API nf_status nf_thermal_write_pgm(const nf_thermal_frame* frame, const char* path);

/* ---- radiometry --------------------------------------------------------- */

/* Counts are centikelvin: celsius = counts / 100 - 273.15. */
NF_API double nf_raw_to_celsius(uint16_t counts);
NF_API nf_status nf_thermal_query_celsius(const nf_thermal_frame* frame, int32_t x,
                                          int32_t y, double* celsius);

/* ---- fusion ------------------------------------------------------------- */

typedef enum nf_guided_mode {
  NF_GUIDED_EXACT = 0,
  NF_GUIDED_FAST = 1
} nf_guided_mode;

typedef struct nf_fusion_config {
  double p_low;             /* lower stretch percentile, default 2 */
  double p_high;            /* upper stretch percentile, default 98 */
  double gamma;             /* default 0.7 */
  double ema_a;             /* temporal smoothing factor in [0,1), default 0.9 */
  int32_t gauss_k;          /* odd blur width for the proxy, default 7 */
  double alpha;             /* gain floor, default 0.7 */
  double beta;              /* gain slope, default 1.6 */
  double unsharp_strength;  /* default 0.5; 0 disables sharpening */
  int32_t unsharp_k;        /* odd blur width for unsharp, default 5 */
  int32_t clahe_enabled;    /* default 1 */
  double clahe_clip;        /* clip factor, default 2.0 */
  int32_t clahe_grid;       /* tiles per axis, default 8 */
  int32_t guided_radius;    /* default 8 */
  double guided_eps;        /* default 0.01 */
  int32_t guided_subsample; /* default 4, used by NF_GUIDED_FAST */
  nf_guided_mode guided_mode; /* default NF_GUIDED_EXACT */
} nf_fusion_config;

NF_API void nf_fusion_config_defaults(nf_fusion_config* cfg);

/* Stateful fusion engine; carries the temporal illumination estimate. */
typedef struct nf_fusion nf_fusion;

NF_API nf_status nf_fusion_create(const nf_fusion_config* cfg, nf_fusion** out);
NF_API void nf_fusion_destroy(nf_fusion* fusion);
/* Fuses one visible/thermal pair. Outputs are freshly allocated; l_hat_out may
 * be NULL when the illumination estimate is not wanted. */
NF_API nf_status nf_fusion_fuse(nf_fusion* fusion, const nf_rgb_image* visible,
                                const nf_thermal_frame* thermal,
                                nf_rgb_image** fused_out, nf_gray_image** l_hat_out);
/* Drops temporal state; the next frame re-initialises the estimate. */
NF_API nf_status nf_fusion_reset(nf_fusion* fusion);

/* ---- servo -------------------------------------------------------------- */

typedef struct nf_pid_gains {
  double kp;
  double ki;
  double kd;
  double dt; /* seconds per step, > 0 */
} nf_pid_gains;

typedef struct nf_servo_limits {
  double theta_min_deg; /* default -90 */
  double theta_max_deg; /* default +90 */
  /* Cap on |integral of error|; <= 0 selects theta_max_deg / ki (unbounded
   * when ki is 0). */
  double e_sum_limit;
} nf_servo_limits;

typedef struct nf_servo nf_servo;

NF_API nf_status nf_servo_create(const nf_pid_gains* gains, const nf_servo_limits* limits,
                                 double theta_initial_deg, nf_servo** out);
NF_API void nf_servo_destroy(nf_servo* servo);
/* One control update for pixel error e; returns the new angle. */
NF_API nf_status nf_servo_step(nf_servo* servo, double e_px, double* theta_deg);
/* Missed detection: angle and controller state stay frozen. */
NF_API nf_status nf_servo_hold(nf_servo* servo, double* theta_deg);
NF_API nf_status nf_servo_angle(const nf_servo* servo, double* theta_deg);

/* ---- tracking simulation ------------------------------------------------ */

typedef struct nf_camera_geometry {
  double hfov_deg;  /* horizontal field of view, > 0 */
  int32_t width_px; /* sensor width, >= 1 */
} nf_camera_geometry;

typedef enum nf_motion_kind {
  NF_MOTION_STATIC = 0,
  NF_MOTION_STEP = 1,
  NF_MOTION_LINEAR = 2,
  NF_MOTION_SINUSOID = 3
} nf_motion_kind;

typedef struct nf_target_motion {
  nf_motion_kind kind;
  double initial_deg;   /* azimuth at t = 0 */
  double step_time_s;   /* NF_MOTION_STEP: time of the jump */
  double step_deg;      /* NF_MOTION_STEP: offset after the jump */
  double rate_deg_per_s; /* NF_MOTION_LINEAR */
  double amplitude_deg; /* NF_MOTION_SINUSOID */
  double period_s;      /* NF_MOTION_SINUSOID, > 0 */
} nf_target_motion;

typedef struct nf_detector_model {
  double p_detect;      /* in [0,1], default 1 */
  double noise_sigma_px; /* >= 0 */
  uint64_t seed;
} nf_detector_model;

typedef struct nf_sim_config {
  nf_camera_geometry geometry;
  int64_t frames;          /* >= 1 */
  double dt_s;             /* > 0 */
  double latency_mean_ms;  /* >= 0 */
  double latency_sigma_ms; /* >= 0 */
} nf_sim_config;

typedef struct nf_track_record {
  int64_t frame;
  double t_ms;
  int32_t detected;  /* 0 or 1 */
  double e_px;       /* NaN when detected == 0 */
  double theta_deg;
  double latency_ms;
} nf_track_record;

typedef struct nf_trace nf_trace;

NF_API void nf_trace_destroy(nf_trace* trace);
NF_API nf_status nf_trace_size(const nf_trace* trace, int64_t* count);
NF_API nf_status nf_trace_at(const nf_trace* trace, int64_t index, nf_track_record* out);
NF_API nf_status nf_trace_from_records(const nf_track_record* records, int64_t count,
                                       nf_trace** out);
NF_API nf_status nf_trace_read_csv(const char* path, nf_trace** out);
NF_API nf_status nf_trace_write_csv(const nf_trace* trace, const char* path);

/* Runs the closed loop: project target, detect, PID or hold. gains.dt must
 * equal sim.dt_s. */
NF_API nf_status nf_simulate(const nf_sim_config* sim, const nf_pid_gains* gains,
                             const nf_servo_limits* limits, double theta_initial_deg,
                             const nf_target_motion* motion,
                             const nf_detector_model* detector, nf_trace** out);

/* ---- metrics ------------------------------------------------------------ */

typedef struct nf_track_stats {
  /* |e| over detected frames; meaningless (NaN) unless has_error_stats. */
  int32_t has_error_stats;
  double e_px_mean;
  double e_px_std; /* population */
  double e_px_median;
  double e_px_iqr;
  double e_deg_mean;
  double e_deg_median;
  double detection_rate_pct;
  double fps_mean;
  double fps_std;
  double latency_mean_ms;
  double latency_std_ms;
  double latency_median_ms;
  int64_t n_frames;
  int64_t n_detected;
} nf_track_stats;

/* Needs at least 2 records (fps comes from adjacent timestamp gaps). */
NF_API nf_status nf_trace_stats(const nf_trace* trace, const nf_camera_geometry* geometry,
                                nf_track_stats* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NIGHTFUSION_H */
