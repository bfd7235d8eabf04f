#include <algorithm>
#include <cmath>
#include <doctest.h>

#include "helpers.hpp"
#include "image_ops.hpp"

using namespace nf;

TEST_SUITE("image_ops") {

TEST_CASE("percentile interpolated order statistic") {
  // 100-point ramp i/99: rank p/100*(n-1) lands exactly on sample p.
  GrayImage ramp(100, 1);
  for (int i = 0; i < 100; ++i) ramp.data[i] = static_cast<float>(i / 99.0);
  // Samples are float32, so expectations carry float-scale tolerance.
  CHECK(percentile(ramp, 0.0) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(percentile(ramp, 100.0) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(percentile(ramp, 2.0) == doctest::Approx(0.02).epsilon(1e-7));
  CHECK(percentile(ramp, 98.0) == doctest::Approx(0.98).epsilon(1e-7));
  CHECK(percentile(ramp, 50.0) == doctest::Approx(0.5).epsilon(1e-7));

  GrayImage two(2, 1);
  two.data = {0.0f, 1.0f};
  CHECK(percentile(two, 50.0) == 0.5);
  CHECK(percentile(two, 25.0) == 0.25);

  GrayImage one(1, 1, 0.3f);
  CHECK(percentile(one, 0.0) == doctest::Approx(0.3f));
  CHECK(percentile(one, 100.0) == doctest::Approx(0.3f));
}

TEST_CASE("percentile matches sort-and-interpolate reference on random data") {
  for (uint32_t seed = 0; seed < 50; ++seed) {
    const GrayImage img = nft::random_gray(17, 13, seed);
    std::vector<float> sorted(img.data);
    std::sort(sorted.begin(), sorted.end());
    std::mt19937 rng(seed + 1000);
    std::uniform_real_distribution<double> pd(0.0, 100.0);
    for (int k = 0; k < 8; ++k) {
      const double p = pd(rng);
      const double rank = p / 100.0 * (sorted.size() - 1);
      const size_t lo = static_cast<size_t>(rank);
      const double frac = rank - lo;
      const double want =
          lo + 1 < sorted.size() ? sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]) : sorted[lo];
      CHECK(percentile(img, p) == doctest::Approx(want).epsilon(1e-7));
    }
  }
}

TEST_CASE("percentile rejects bad input") {
  GrayImage empty;
  CHECK_THROWS_AS(percentile(empty, 50.0), Error);
  GrayImage one(1, 1, 0.0f);
  CHECK_THROWS_AS(percentile(one, -1.0), Error);
  CHECK_THROWS_AS(percentile(one, 100.5), Error);
}

TEST_CASE("stretch maps percentile band to [0,1]") {
  GrayImage ramp(100, 1);
  for (int i = 0; i < 100; ++i) ramp.data[i] = static_cast<float>(i / 99.0);
  const GrayImage out = stretch_percentiles(ramp, 2.0, 98.0);
  // (0.5 - 0.02) / 0.96 = 0.5
  CHECK(out.data[50] == doctest::Approx((50 / 99.0 - 0.02) / 0.96).epsilon(1e-6));
  CHECK(out.data[0] == 0.0f);   // below lo clips
  CHECK(out.data[99] == 1.0f);  // above hi clips
  for (float v : out.data) {
    CHECK(v >= 0.0f);
    CHECK(v <= 1.0f);
  }
}

TEST_CASE("stretch degenerate range gives constant 0.5") {
  GrayImage flat(8, 8, 0.37f);
  const GrayImage out = stretch_percentiles(flat, 2.0, 98.0);
  for (float v : out.data) CHECK(v == 0.5f);
}

TEST_CASE("stretch is scale and offset invariant") {
  const GrayImage img = nft::random_gray(23, 19, 9);
  const GrayImage base = stretch_percentiles(img, 5.0, 95.0);
  GrayImage scaled(img.width, img.height);
  for (size_t i = 0; i < img.data.size(); ++i) {
    scaled.data[i] = 0.25f + 0.5f * img.data[i];
  }
  const GrayImage out = stretch_percentiles(scaled, 5.0, 95.0);
  for (size_t i = 0; i < base.data.size(); ++i) {
    CHECK(out.data[i] == doctest::Approx(base.data[i]).epsilon(1e-5));
  }
}

TEST_CASE("resize bilinear half-pixel centers") {
  GrayImage in(2, 1);
  in.data = {0.0f, 1.0f};
  const GrayImage out = resize_bilinear(in, 4, 1);
  CHECK(out.data[0] == doctest::Approx(0.0));
  CHECK(out.data[1] == doctest::Approx(0.25));
  CHECK(out.data[2] == doctest::Approx(0.75));
  CHECK(out.data[3] == doctest::Approx(1.0));
}

TEST_CASE("resize identity is bit exact") {
  const GrayImage img = nft::random_gray(13, 7, 3);
  const GrayImage out = resize_bilinear(img, 13, 7);
  CHECK(out.data == img.data);
}

TEST_CASE("resize preserves constants") {
  GrayImage flat(10, 6, 0.42f);
  const GrayImage out = resize_bilinear(flat, 33, 17);
  for (float v : out.data) CHECK(v == doctest::Approx(0.42f).epsilon(1e-7));
}

TEST_CASE("box filter equals direct window mean") {
  for (uint32_t seed = 0; seed < 10; ++seed) {
    const GrayImage img = nft::random_gray(21, 14, seed + 50);
    for (int r : {1, 2, 5}) {
      const GrayImage fast = box_filter(img, r);
      const GrayImage brute = nft::box_mean_brute(img, r);
      for (size_t i = 0; i < img.data.size(); ++i) {
        CHECK(fast.data[i] == doctest::Approx(brute.data[i]).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("box filter impulse spreads to 1/9 under r=1") {
  GrayImage img(3, 3, 0.0f);
  img.at(1, 1) = 1.0f;
  const GrayImage out = box_filter(img, 1);
  // Every replicated 3x3 window contains the center exactly once.
  for (float v : out.data) CHECK(v == doctest::Approx(1.0 / 9.0).epsilon(1e-7));
}

TEST_CASE("box filter preserves constants exactly") {
  GrayImage flat(17, 9, 0.3f);
  const GrayImage out = box_filter(flat, 4);
  for (float v : out.data) CHECK(v == 0.3f);
}

TEST_CASE("gaussian kernel taps for k=7") {
  const std::vector<double> k = gaussian_kernel(7);
  // sigma = 0.3*((7-1)/2 - 1) + 0.8 = 1.4
  const double want[7] = {0.02899526513181743, 0.10381835124997371, 0.22317336074208335,
                          0.2880260457522511,  0.22317336074208335, 0.10381835124997371,
                          0.02899526513181743};
  REQUIRE(k.size() == 7);
  double sum = 0.0;
  for (int i = 0; i < 7; ++i) {
    CHECK(k[i] == doctest::Approx(want[i]).epsilon(1e-12));
    sum += k[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gaussian blur impulse reproduces separable taps") {
  GrayImage img(15, 15, 0.0f);
  img.at(7, 7) = 1.0f;
  const GrayImage out = gaussian_blur(img, 7);
  const std::vector<double> k = gaussian_kernel(7);
  for (int dy = -3; dy <= 3; ++dy) {
    for (int dx = -3; dx <= 3; ++dx) {
      CHECK(out.at(7 + dx, 7 + dy) ==
            doctest::Approx(k[dx + 3] * k[dy + 3]).epsilon(1e-6));
    }
  }
  CHECK(out.at(0, 0) == 0.0f);
}

TEST_CASE("gaussian blur k=1 is identity, constants preserved") {
  const GrayImage img = nft::random_gray(9, 9, 77);
  CHECK(gaussian_blur(img, 1).data == img.data);
  GrayImage flat(12, 8, 0.77f);
  const GrayImage out = gaussian_blur(flat, 7);
  for (float v : out.data) CHECK(v == doctest::Approx(0.77f).epsilon(1e-7));
}

TEST_CASE("gaussian blur rejects even width") {
  GrayImage img(4, 4, 0.0f);
  CHECK_THROWS_AS(gaussian_blur(img, 4), Error);
  CHECK_THROWS_AS(gaussian_blur(img, 0), Error);
}

TEST_CASE("ycbcr forward values and round trip") {
  RgbImage red(1, 1);
  red.data = {1.0f, 0.0f, 0.0f};
  const YcbcrPlanes p = rgb_to_ycbcr(red);
  CHECK(p.y.data[0] == doctest::Approx(0.299).epsilon(1e-6));
  CHECK(p.cb.data[0] == doctest::Approx(0.331364).epsilon(1e-6));
  CHECK(p.cr.data[0] == doctest::Approx(0.9998130000000001).epsilon(1e-6));

  const RgbImage img = nft::random_rgb(16, 11, 21);
  const RgbImage back = ycbcr_to_rgb(rgb_to_ycbcr(img));
  for (size_t i = 0; i < img.data.size(); ++i) {
    CHECK(back.data[i] == doctest::Approx(img.data[i]).epsilon(1e-6));
  }
}

TEST_CASE("gray luminance matches Y plane") {
  const RgbImage img = nft::random_rgb(7, 5, 4);
  const GrayImage y = luminance(img);
  const YcbcrPlanes p = rgb_to_ycbcr(img);
  CHECK(y.data == p.y.data);
}

}  // TEST_SUITE
