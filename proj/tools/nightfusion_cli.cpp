// nightfusion command-line front end. Talks to the core exclusively through
// the public C API.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nightfusion/nightfusion.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;  // usage / config errors
constexpr int kExitData = 2;   // data errors

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AppConfig {
  nf_fusion_config fusion{};
  nf_pid_gains gains{};
  nf_servo_limits limits{};
  double theta_initial = 0.0;
  nf_camera_geometry geometry{};
  nf_sim_config sim{};
  nf_target_motion motion{};
  nf_detector_model detector{};
};

void check_keys(const json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end()) {
      const std::string prefix = section.empty() ? "" : section + ".";
      throw ConfigError("config: unknown key '" + prefix + item.key() + "'");
    }
  }
}

template <typename T>
void load_key(const json& obj, const std::string& section, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: bad value for '" + section + "." + key + "'");
  }
}

AppConfig default_config() {
  AppConfig cfg;
  nf_fusion_config_defaults(&cfg.fusion);
  cfg.gains = {0.0, 0.0, 0.0, 0.0};  // dt filled from sim below
  cfg.limits = {-90.0, 90.0, 0.0};
  cfg.geometry = {60.0, 640};
  cfg.sim.geometry = cfg.geometry;
  cfg.sim.frames = 1;
  cfg.sim.dt_s = 1.0 / 15.0;
  cfg.sim.latency_mean_ms = 0.0;
  cfg.sim.latency_sigma_ms = 0.0;
  cfg.motion = {NF_MOTION_STATIC, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  cfg.detector = {1.0, 0.0, 0};
  return cfg;
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  check_keys(doc, "", {"fusion", "gains", "servo", "geometry", "sim", "motion", "detector"});

  AppConfig cfg = default_config();

  if (doc.contains("fusion")) {
    const json& f = doc["fusion"];
    check_keys(f, "fusion",
               {"p_low", "p_high", "gamma", "ema_a", "gauss_k", "alpha", "beta",
                "unsharp_strength", "unsharp_k", "clahe_enabled", "clahe_clip", "clahe_grid",
                "guided_radius", "guided_eps", "guided_subsample", "guided_mode"});
    load_key(f, "fusion", "p_low", cfg.fusion.p_low);
    load_key(f, "fusion", "p_high", cfg.fusion.p_high);
    load_key(f, "fusion", "gamma", cfg.fusion.gamma);
    load_key(f, "fusion", "ema_a", cfg.fusion.ema_a);
    load_key(f, "fusion", "gauss_k", cfg.fusion.gauss_k);
    load_key(f, "fusion", "alpha", cfg.fusion.alpha);
    load_key(f, "fusion", "beta", cfg.fusion.beta);
    load_key(f, "fusion", "unsharp_strength", cfg.fusion.unsharp_strength);
    load_key(f, "fusion", "unsharp_k", cfg.fusion.unsharp_k);
    bool clahe_on = cfg.fusion.clahe_enabled != 0;
    load_key(f, "fusion", "clahe_enabled", clahe_on);
    cfg.fusion.clahe_enabled = clahe_on ? 1 : 0;
    load_key(f, "fusion", "clahe_clip", cfg.fusion.clahe_clip);
    load_key(f, "fusion", "clahe_grid", cfg.fusion.clahe_grid);
    load_key(f, "fusion", "guided_radius", cfg.fusion.guided_radius);
    load_key(f, "fusion", "guided_eps", cfg.fusion.guided_eps);
    load_key(f, "fusion", "guided_subsample", cfg.fusion.guided_subsample);
    std::string mode = cfg.fusion.guided_mode == NF_GUIDED_FAST ? "fast" : "exact";
    load_key(f, "fusion", "guided_mode", mode);
    if (mode == "exact") {
      cfg.fusion.guided_mode = NF_GUIDED_EXACT;
    } else if (mode == "fast") {
      cfg.fusion.guided_mode = NF_GUIDED_FAST;
    } else {
      throw ConfigError("config: bad value for 'fusion.guided_mode' (want exact|fast)");
    }
  }

  if (doc.contains("sim")) {
    const json& s = doc["sim"];
    check_keys(s, "sim", {"frames", "dt", "latency_mean_ms", "latency_sigma_ms"});
    load_key(s, "sim", "frames", cfg.sim.frames);
    load_key(s, "sim", "dt", cfg.sim.dt_s);
    load_key(s, "sim", "latency_mean_ms", cfg.sim.latency_mean_ms);
    load_key(s, "sim", "latency_sigma_ms", cfg.sim.latency_sigma_ms);
  }

  cfg.gains.dt = cfg.sim.dt_s;
  if (doc.contains("gains")) {
    const json& g = doc["gains"];
    check_keys(g, "gains", {"kp", "ki", "kd", "dt"});
    load_key(g, "gains", "kp", cfg.gains.kp);
    load_key(g, "gains", "ki", cfg.gains.ki);
    load_key(g, "gains", "kd", cfg.gains.kd);
    load_key(g, "gains", "dt", cfg.gains.dt);
    if (cfg.gains.dt != cfg.sim.dt_s) {
      throw ConfigError("config: 'gains.dt' must match 'sim.dt'");
    }
  }

  if (doc.contains("servo")) {
    const json& s = doc["servo"];
    check_keys(s, "servo", {"theta_initial", "theta_min", "theta_max", "e_sum_limit"});
    load_key(s, "servo", "theta_initial", cfg.theta_initial);
    load_key(s, "servo", "theta_min", cfg.limits.theta_min_deg);
    load_key(s, "servo", "theta_max", cfg.limits.theta_max_deg);
    load_key(s, "servo", "e_sum_limit", cfg.limits.e_sum_limit);
  }

  if (doc.contains("geometry")) {
    const json& g = doc["geometry"];
    check_keys(g, "geometry", {"hfov_deg", "width_px"});
    load_key(g, "geometry", "hfov_deg", cfg.geometry.hfov_deg);
    load_key(g, "geometry", "width_px", cfg.geometry.width_px);
  }

  if (doc.contains("motion")) {
    const json& m = doc["motion"];
    check_keys(m, "motion",
               {"kind", "initial_deg", "step_time_s", "step_deg", "rate_deg_per_s",
                "amplitude_deg", "period_s"});
    std::string kind = "static";
    load_key(m, "motion", "kind", kind);
    if (kind == "static") {
      cfg.motion.kind = NF_MOTION_STATIC;
    } else if (kind == "step") {
      cfg.motion.kind = NF_MOTION_STEP;
    } else if (kind == "linear") {
      cfg.motion.kind = NF_MOTION_LINEAR;
    } else if (kind == "sinusoid") {
      cfg.motion.kind = NF_MOTION_SINUSOID;
    } else {
      throw ConfigError(
          "config: bad value for 'motion.kind' (want static|step|linear|sinusoid)");
    }
    load_key(m, "motion", "initial_deg", cfg.motion.initial_deg);
    load_key(m, "motion", "step_time_s", cfg.motion.step_time_s);
    load_key(m, "motion", "step_deg", cfg.motion.step_deg);
    load_key(m, "motion", "rate_deg_per_s", cfg.motion.rate_deg_per_s);
    load_key(m, "motion", "amplitude_deg", cfg.motion.amplitude_deg);
    load_key(m, "motion", "period_s", cfg.motion.period_s);
  }

  if (doc.contains("detector")) {
    const json& d = doc["detector"];
    check_keys(d, "detector", {"p_detect", "noise_sigma_px", "seed"});
    load_key(d, "detector", "p_detect", cfg.detector.p_detect);
    load_key(d, "detector", "noise_sigma_px", cfg.detector.noise_sigma_px);
    load_key(d, "detector", "seed", cfg.detector.seed);
  }

  cfg.sim.geometry = cfg.geometry;
  return cfg;
}

int print_nf_error(nf_status status, int exit_code) {
  std::fprintf(stderr, "error: %s\n", nf_last_error());
  (void)status;
  return exit_code;
}

// Data errors get exit 2; anything already validated (config) never reaches
// here. Parse errors are malformed-input usage errors per the CSV contract.
int exit_for(nf_status status) {
  return status == NF_ERR_PARSE ? kExitUsage : kExitData;
}

std::vector<fs::path> list_frames(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw ConfigError("config: '" + dir + "' is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return files;
}

unsigned writer_threads() {
  unsigned cap = std::thread::hardware_concurrency();
  if (cap == 0) cap = 1;
  if (const char* env = std::getenv("NFS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw ConfigError("config: NFS_THREADS must be a positive integer");
    }
    cap = static_cast<unsigned>(v);
  }
  return cap;
}

struct WriteJob {
  std::function<nf_status()> run;
  std::string label;
};

// Runs up to `threads` jobs concurrently; reports the first failure.
void run_writes(std::vector<WriteJob>& jobs, unsigned threads) {
  const unsigned n = static_cast<unsigned>(jobs.size());
  const unsigned workers = std::min(threads, n);
  std::vector<nf_status> results(n, NF_OK);
  std::vector<std::string> messages(n);
  if (workers <= 1) {
    for (unsigned i = 0; i < n; ++i) {
      results[i] = jobs[i].run();
      if (results[i] != NF_OK) messages[i] = nf_last_error();
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<unsigned> next{0};
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        while (true) {
          const unsigned i = next.fetch_add(1);
          if (i >= n) return;
          results[i] = jobs[i].run();
          if (results[i] != NF_OK) messages[i] = nf_last_error();
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  for (unsigned i = 0; i < n; ++i) {
    if (results[i] != NF_OK) {
      throw std::runtime_error(messages[i].empty() ? jobs[i].label + " failed" : messages[i]);
    }
  }
}

int cmd_fuse(const std::string& visible_dir, const std::string& thermal_dir,
             const std::string& out_dir, const std::string& config_path) {
  AppConfig cfg = load_config(config_path);
  const unsigned threads = writer_threads();

  const std::vector<fs::path> visible = list_frames(visible_dir);
  const std::vector<fs::path> thermal = list_frames(thermal_dir);
  if (visible.size() != thermal.size()) {
    std::fprintf(stderr, "error: frame count mismatch: %zu visible, %zu thermal\n",
                 visible.size(), thermal.size());
    return kExitData;
  }
  if (visible.empty()) {
    std::fprintf(stderr, "error: no frames\n");
    return kExitData;
  }
  fs::create_directories(out_dir);

  nf_fusion* fusion = nullptr;
  nf_status status = nf_fusion_create(&cfg.fusion, &fusion);
  if (status != NF_OK) return print_nf_error(status, kExitUsage);
  std::unique_ptr<nf_fusion, decltype(&nf_fusion_destroy)> fusion_guard(fusion,
                                                                        nf_fusion_destroy);

  std::string timing = "frame,fuse_ms\n";
  for (size_t i = 0; i < visible.size(); ++i) {
    nf_rgb_image* vis = nullptr;
    status = nf_rgb_read_ppm(visible[i].string().c_str(), &vis);
    if (status != NF_OK) return print_nf_error(status, kExitData);
    std::unique_ptr<nf_rgb_image, decltype(&nf_rgb_destroy)> vis_guard(vis, nf_rgb_destroy);

    nf_thermal_frame* thm = nullptr;
    status = nf_thermal_read_pgm(thermal[i].string().c_str(), &thm);
    if (status != NF_OK) return print_nf_error(status, kExitData);
    std::unique_ptr<nf_thermal_frame, decltype(&nf_thermal_destroy)> thm_guard(
        thm, nf_thermal_destroy);

    nf_rgb_image* fused = nullptr;
    nf_gray_image* l_hat = nullptr;
    const auto t0 = std::chrono::steady_clock::now();
    status = nf_fusion_fuse(fusion, vis, thm, &fused, &l_hat);
    const auto t1 = std::chrono::steady_clock::now();
    if (status != NF_OK) return print_nf_error(status, kExitData);
    std::unique_ptr<nf_rgb_image, decltype(&nf_rgb_destroy)> fused_guard(fused, nf_rgb_destroy);
    std::unique_ptr<nf_gray_image, decltype(&nf_gray_destroy)> lhat_guard(l_hat,
                                                                          nf_gray_destroy);

    const std::string stem = visible[i].stem().string();
    const std::string fused_path = (fs::path(out_dir) / ("fused_" + stem + ".ppm")).string();
    const std::string lhat_path = (fs::path(out_dir) / ("lhat_" + stem + ".pgm")).string();
    const std::string lhat_color_path =
        (fs::path(out_dir) / ("lhat_color_" + stem + ".ppm")).string();

    std::vector<WriteJob> jobs;
    jobs.push_back({[&, fused_path] { return nf_rgb_write_ppm(fused, fused_path.c_str()); },
                    fused_path});
    jobs.push_back(
        {[&, lhat_path] { return nf_gray_write_pgm(l_hat, lhat_path.c_str()); }, lhat_path});
    jobs.push_back({[&, lhat_color_path] {
                      return nf_gray_write_inferno_ppm(l_hat, lhat_color_path.c_str());
                    },
                    lhat_color_path});
    try {
      run_writes(jobs, threads);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return kExitData;
    }

    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    char row[128];
    std::snprintf(row, sizeof(row), "%zu,%.3f\n", i, ms);
    timing += row;
  }

  std::ofstream tf(fs::path(out_dir) / "timing.csv", std::ios::binary);
  tf << timing;
  if (!tf) {
    std::fprintf(stderr, "error: cannot write timing.csv\n");
    return kExitData;
  }
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& trace_out) {
  AppConfig cfg = load_config(config_path);
  nf_trace* trace = nullptr;
  nf_status status = nf_simulate(&cfg.sim, &cfg.gains, &cfg.limits, cfg.theta_initial,
                                 &cfg.motion, &cfg.detector, &trace);
  if (status != NF_OK) return print_nf_error(status, kExitUsage);
  std::unique_ptr<nf_trace, decltype(&nf_trace_destroy)> guard(trace, nf_trace_destroy);
  status = nf_trace_write_csv(trace, trace_out.c_str());
  if (status != NF_OK) return print_nf_error(status, kExitData);
  return kExitOk;
}

std::string fmt1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmtg(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

int cmd_metrics(const std::string& trace_path, double hfov, int width) {
  nf_trace* trace = nullptr;
  nf_status status = nf_trace_read_csv(trace_path.c_str(), &trace);
  if (status != NF_OK) return print_nf_error(status, exit_for(status));
  std::unique_ptr<nf_trace, decltype(&nf_trace_destroy)> guard(trace, nf_trace_destroy);

  nf_camera_geometry geometry{hfov, width};
  nf_track_stats s{};
  status = nf_trace_stats(trace, &geometry, &s);
  if (status != NF_OK) return print_nf_error(status, exit_for(status));

  std::string out = "Tracking report\n";
  out += "FPS " + fmt1(s.fps_mean) + " \xC2\xB1 " + fmt1(s.fps_std) + "\n";
  out += "Latency [ms] " + fmt1(s.latency_mean_ms) + " \xC2\xB1 " + fmt1(s.latency_std_ms) +
         " (" + fmt1(s.latency_median_ms) + ")\n";
  out += "Detection rate [%] " + fmt1(s.detection_rate_pct) + "\n";
  if (s.has_error_stats) {
    out += "|e_t| [px] " + fmt1(s.e_px_mean) + " \xC2\xB1 " + fmt1(s.e_px_std) + " (" +
           fmt1(s.e_px_median) + ")\n";
    out += "|e_t| [deg] " + fmt2(s.e_deg_mean) + " (" + fmt2(s.e_deg_median) + ")\n";
  } else {
    out += "|e_t| [px] n/a\n";
    out += "|e_t| [deg] n/a\n";
  }
  out += "n_frames=" + std::to_string(s.n_frames) + "\n";
  out += "n_detected=" + std::to_string(s.n_detected) + "\n";
  out += "detection_rate_pct=" + fmtg(s.detection_rate_pct) + "\n";
  out += "fps_mean=" + fmtg(s.fps_mean) + "\n";
  out += "fps_std=" + fmtg(s.fps_std) + "\n";
  out += "latency_mean_ms=" + fmtg(s.latency_mean_ms) + "\n";
  out += "latency_std_ms=" + fmtg(s.latency_std_ms) + "\n";
  out += "latency_median_ms=" + fmtg(s.latency_median_ms) + "\n";
  if (s.has_error_stats) {
    out += "mean_abs_e_px=" + fmtg(s.e_px_mean) + "\n";
    out += "std_abs_e_px=" + fmtg(s.e_px_std) + "\n";
    out += "median_abs_e_px=" + fmtg(s.e_px_median) + "\n";
    out += "iqr_abs_e_px=" + fmtg(s.e_px_iqr) + "\n";
    out += "mean_abs_e_deg=" + fmtg(s.e_deg_mean) + "\n";
    out += "median_abs_e_deg=" + fmtg(s.e_deg_median) + "\n";
  } else {
    out += "mean_abs_e_px=n/a\n";
    out += "std_abs_e_px=n/a\n";
    out += "median_abs_e_px=n/a\n";
    out += "iqr_abs_e_px=n/a\n";
    out += "mean_abs_e_deg=n/a\n";
    out += "median_abs_e_deg=n/a\n";
  }
  std::fputs(out.c_str(), stdout);
  return kExitOk;
}

int cmd_query_temp(const std::string& path, int x, int y) {
  nf_thermal_frame* frame = nullptr;
  nf_status status = nf_thermal_read_pgm(path.c_str(), &frame);
  if (status != NF_OK) {
    // Wrong bit depth is a usage error for temperature queries.
    return print_nf_error(status, status == NF_ERR_FORMAT ? kExitUsage : kExitData);
  }
  std::unique_ptr<nf_thermal_frame, decltype(&nf_thermal_destroy)> guard(frame,
                                                                         nf_thermal_destroy);
  double celsius = 0.0;
  status = nf_thermal_query_celsius(frame, x, y, &celsius);
  if (status != NF_OK) return print_nf_error(status, kExitUsage);
  std::printf("T(%d,%d) = %.2f C\n", x, y, celsius);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal-guided low-light enhancement and pan tracking"};
  app.require_subcommand(1);

  std::string visible_dir, thermal_dir, out_dir, config_path, trace_path;
  double hfov = 60.0;
  int width = 640;
  int qx = 0, qy = 0;

  CLI::App* fuse = app.add_subcommand("fuse", "Fuse visible/thermal frame directories");
  fuse->add_option("visible_dir", visible_dir, "Directory of P6 PPM visible frames")
      ->required();
  fuse->add_option("thermal_dir", thermal_dir, "Directory of 16-bit P5 PGM thermal frames")
      ->required();
  fuse->add_option("out_dir", out_dir, "Output directory")->required();
  fuse->add_option("config", config_path, "JSON config file")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "Run the closed-loop tracking simulator");
  simulate->add_option("config", config_path, "JSON config file")->required();
  simulate->add_option("trace_out", trace_path, "Output trace CSV path")->required();

  CLI::App* metrics = app.add_subcommand("metrics", "Report tracking statistics from a trace");
  metrics->add_option("trace", trace_path, "Trace CSV path")->required();
  metrics->add_option("--hfov", hfov, "Horizontal field of view [deg]");
  metrics->add_option("--width", width, "Sensor width [px]");

  CLI::App* query = app.add_subcommand("query-temp", "Query temperature at a pixel");
  query->add_option("thermal", config_path, "16-bit P5 PGM thermal frame")->required();
  query->add_option("x", qx, "Pixel column")->required();
  query->add_option("y", qy, "Pixel row")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (fuse->parsed()) return cmd_fuse(visible_dir, thermal_dir, out_dir, config_path);
    if (simulate->parsed()) return cmd_simulate(config_path, trace_path);
    if (metrics->parsed()) return cmd_metrics(trace_path, hfov, width);
    if (query->parsed()) return cmd_query_temp(config_path, qx, qy);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
