#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <random>

#include "metrics.hpp"

using namespace nf;

namespace {

TrackRecord rec(int64_t frame, double t_ms, bool detected, double e_px, double theta = 0.0,
                double latency = 0.0) {
  TrackRecord r;
  r.frame = frame;
  r.t_ms = t_ms;
  r.detected = detected;
  r.e_px = detected ? e_px : std::numeric_limits<double>::quiet_NaN();
  r.theta_deg = theta;
  r.latency_ms = latency;
  return r;
}

double sorted_percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double rank = p / 100.0 * (v.size() - 1);
  const size_t lo = static_cast<size_t>(rank);
  const double frac = rank - lo;
  if (lo + 1 >= v.size()) return v[lo];
  return v[lo] + frac * (v[lo + 1] - v[lo]);
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("symmetric errors and a single detection") {
  TrackTrace t{rec(0, 0, true, 3.0), rec(1, 50, false, 0), rec(2, 100, true, -3.0)};
  const auto s = abs_error_stats(t);
  REQUIRE(s.has_value());
  CHECK(s->mean == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s->median == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s->stddev == doctest::Approx(0.0).epsilon(1e-12));

  TrackTrace single{rec(0, 0, true, -7.0), rec(1, 50, false, 0)};
  const auto s2 = abs_error_stats(single);
  REQUIRE(s2.has_value());
  CHECK(s2->mean == 7.0);
  CHECK(s2->median == 7.0);
  CHECK(s2->stddev == 0.0);
  CHECK(s2->iqr == 0.0);
}

TEST_CASE("dropout-heavy trace matches brute-force filter-sort oracle") {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> err(-120.0, 120.0);
  std::bernoulli_distribution drop(0.5);
  TrackTrace trace;
  std::vector<double> kept;
  for (int i = 0; i < 1000; ++i) {
    const bool detected = !drop(rng);
    const double e = err(rng);
    trace.push_back(rec(i, i * 50.0, detected, e));
    if (detected) kept.push_back(std::abs(e));
  }
  REQUIRE(!kept.empty());
  const auto s = abs_error_stats(trace);
  REQUIRE(s.has_value());

  double mean = 0.0;
  for (double v : kept) mean += v;
  mean /= kept.size();
  double var = 0.0;
  for (double v : kept) var += (v - mean) * (v - mean);
  const double stddev = std::sqrt(var / kept.size());
  CHECK(s->mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(s->stddev == doctest::Approx(stddev).epsilon(1e-12));
  CHECK(s->median == doctest::Approx(sorted_percentile(kept, 50.0)).epsilon(1e-12));
  CHECK(s->iqr == doctest::Approx(sorted_percentile(kept, 75.0) -
                                  sorted_percentile(kept, 25.0))
                      .epsilon(1e-12));
}

TEST_CASE("exclusion differs from zero-filling whenever it should") {
  TrackTrace trace{rec(0, 0, true, 10.0), rec(1, 50, false, 0), rec(2, 100, true, 20.0),
                   rec(3, 150, false, 0)};
  const auto s = abs_error_stats(trace);
  REQUIRE(s.has_value());
  // Zero-filled variant counts misses as 0 error.
  std::vector<double> zero_filled{10.0, 0.0, 20.0, 0.0};
  double zf_mean = 0.0;
  for (double v : zero_filled) zf_mean += v;
  zf_mean /= zero_filled.size();
  CHECK(s->mean == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(s->mean != doctest::Approx(zf_mean).epsilon(1e-12));
  CHECK(s->median != doctest::Approx(sorted_percentile(zero_filled, 50.0)).epsilon(1e-12));
}

TEST_CASE("no detections is a distinguished result") {
  TrackTrace trace{rec(0, 0, false, 0), rec(1, 50, false, 0)};
  CHECK_FALSE(abs_error_stats(trace).has_value());
  const TrackStats s = summarize(trace, CameraGeometry{60.0, 640});
  CHECK_FALSE(s.e_px.has_value());
  CHECK(std::isnan(s.e_deg_mean));
  CHECK(std::isnan(s.e_deg_median));
  CHECK(s.detection_rate_pct == 0.0);
  CHECK(s.n_detected == 0);
}

TEST_CASE("detection rate") {
  TrackTrace all{rec(0, 0, true, 1.0), rec(1, 50, true, 1.0)};
  CHECK(detection_rate(all) == 100.0);
  TrackTrace none{rec(0, 0, false, 0), rec(1, 50, false, 0)};
  CHECK(detection_rate(none) == 0.0);
  TrackTrace mixed;
  for (int i = 0; i < 1000; ++i) mixed.push_back(rec(i, i * 10.0, i < 255, 1.0));
  CHECK(detection_rate(mixed) == doctest::Approx(25.5).epsilon(1e-12));
}

TEST_CASE("fps from adjacent timestamp gaps") {
  TrackTrace uniform;
  for (int i = 0; i < 10; ++i) uniform.push_back(rec(i, i * (1000.0 / 15.0), true, 0.0));
  const FpsStats f = fps_stats(uniform);
  CHECK(f.mean == doctest::Approx(15.0).epsilon(1e-9));
  CHECK(f.stddev == doctest::Approx(0.0).epsilon(1e-9));

  TrackTrace fast;
  for (int i = 0; i < 10; ++i) fast.push_back(rec(i, i * (1000.0 / 22.0), true, 0.0));
  CHECK(fps_stats(fast).mean == doctest::Approx(22.0).epsilon(1e-9));

  // Alternating 50/100 ms gaps: rates {20, 10, 20, 10, ...}.
  TrackTrace alt;
  double t = 0.0;
  for (int i = 0; i < 9; ++i) {
    alt.push_back(rec(i, t, true, 0.0));
    t += (i % 2 == 0) ? 50.0 : 100.0;
  }
  const FpsStats a = fps_stats(alt);
  CHECK(a.mean == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(a.stddev == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("fps needs two records") {
  TrackTrace one{rec(0, 0, true, 0.0)};
  CHECK_THROWS_AS(fps_stats(one), Error);
}

TEST_CASE("latency statistics") {
  TrackTrace t{rec(0, 0, true, 0, 0, 60.0), rec(1, 50, false, 0, 0, 70.0),
               rec(2, 100, true, 0, 0, 80.0)};
  const LatencyStats s = latency_stats(t);
  CHECK(s.mean == doctest::Approx(70.0).epsilon(1e-12));
  CHECK(s.median == doctest::Approx(70.0).epsilon(1e-12));

  TrackTrace flat;
  for (int i = 0; i < 5; ++i) flat.push_back(rec(i, i * 50.0, true, 0, 0, 69.0));
  const LatencyStats s2 = latency_stats(flat);
  CHECK(s2.mean == 69.0);
  CHECK(s2.stddev == 0.0);
  CHECK(s2.median == 69.0);
}

TEST_CASE("degree conversion spot check") {
  TrackTrace t;
  for (int i = 0; i < 9; ++i) t.push_back(rec(i, i * 50.0, true, 6.0));
  const TrackStats s = summarize(t, CameraGeometry{60.0, 640});
  CHECK(s.e_deg_median == doctest::Approx(0.5625).epsilon(1e-12));
  CHECK(s.e_deg_mean == doctest::Approx(0.5625).epsilon(1e-12));
}

TEST_CASE("scale equivariance of the error statistics") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> err(-40.0, 40.0);
  TrackTrace base;
  for (int i = 0; i < 200; ++i) base.push_back(rec(i, i * 20.0, (i % 3) != 0, err(rng)));
  TrackTrace scaled = base;
  const double c = 3.5;
  for (TrackRecord& r : scaled) {
    if (r.detected) r.e_px *= c;
  }
  const auto a = abs_error_stats(base);
  const auto b = abs_error_stats(scaled);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(b->mean == doctest::Approx(c * a->mean).epsilon(1e-12));
  CHECK(b->stddev == doctest::Approx(c * a->stddev).epsilon(1e-12));
  CHECK(b->median == doctest::Approx(c * a->median).epsilon(1e-12));
  CHECK(b->iqr == doctest::Approx(c * a->iqr).epsilon(1e-12));
}

TEST_CASE("all-zero errors give zero stats and full detection") {
  TrackTrace t;
  for (int i = 0; i < 4; ++i) t.push_back(rec(i, i * 50.0, true, 0.0));
  const TrackStats s = summarize(t, CameraGeometry{60.0, 640});
  REQUIRE(s.e_px.has_value());
  CHECK(s.e_px->mean == 0.0);
  CHECK(s.e_px->stddev == 0.0);
  CHECK(s.e_px->median == 0.0);
  CHECK(s.e_px->iqr == 0.0);
  CHECK(s.detection_rate_pct == 100.0);
}

TEST_CASE("summarize counters") {
  TrackTrace t{rec(0, 0, true, 1.0), rec(1, 50, false, 0), rec(2, 100, true, 2.0)};
  const TrackStats s = summarize(t, CameraGeometry{60.0, 640});
  CHECK(s.n_frames == 3);
  CHECK(s.n_detected == 2);
  CHECK(s.detection_rate_pct >= 0.0);
  CHECK(s.detection_rate_pct <= 100.0);
}

TEST_CASE("empty trace is rejected") {
  TrackTrace empty;
  CHECK_THROWS_AS(abs_error_stats(empty), Error);
  CHECK_THROWS_AS(detection_rate(empty), Error);
  CHECK_THROWS_AS(latency_stats(empty), Error);
}

}  // TEST_SUITE
