#include <cmath>
#include <doctest.h>

#include "fusion.hpp"
#include "helpers.hpp"
#include "image_ops.hpp"

using namespace nf;

TEST_SUITE("fusion") {

TEST_CASE("thermal normalization") {
  ThermalFrame frame(2, 1);
  frame.counts = {0, 65535};
  const GrayImage u = thermal_to_unit(frame);
  CHECK(u.data[0] == 0.0f);
  CHECK(u.data[1] == 1.0f);
}

TEST_CASE("closed form on constant inputs, enhancement stages only") {
  // Constant thermal -> degenerate stretch 0.5 -> gamma -> blur is a no-op on
  // constants -> guided refinement against a constant guide keeps the level ->
  // EMA seeds with it -> gain = alpha + beta*0.5^gamma.
  RgbImage visible(32, 24, 0.1f);
  ThermalFrame thermal(16, 12, 30000);
  FusionConfig cfg;
  cfg.clahe_enabled = false;
  cfg.unsharp_strength = 0.0;
  FusionState state;
  const FuseResult r = fuse_frame(visible, thermal, cfg, state);
  const double l = std::pow(0.5, cfg.gamma);  // 0.6155722066724582
  const double want = 0.1 * (cfg.alpha + cfg.beta * l);  // 0.16849155306759334
  CHECK(l == doctest::Approx(0.6155722066724582).epsilon(1e-12));
  for (float v : r.fused.data) CHECK(v == doctest::Approx(want).epsilon(1e-5));
  for (float v : r.l_hat.data) CHECK(v == doctest::Approx(l).epsilon(1e-5));
}

TEST_CASE("fused output is always inside [0,1]") {
  FusionConfig cfg;
  cfg.guided_mode = GuidedMode::Fast;
  FusionState state;
  for (uint32_t seed = 0; seed < 3; ++seed) {
    const RgbImage visible = nft::random_rgb(40, 30, seed);
    ThermalFrame thermal(20, 15);
    std::mt19937 rng(seed + 99);
    for (uint16_t& c : thermal.counts) c = static_cast<uint16_t>(rng() & 0xFFFF);
    const FuseResult r = fuse_frame(visible, thermal, cfg, state);
    for (float v : r.fused.data) {
      CHECK(v >= 0.0f);
      CHECK(v <= 1.0f);
    }
    for (float v : r.l_hat.data) {
      CHECK(v >= 0.0f);
      CHECK(v <= 1.0f);
    }
  }
}

TEST_CASE("ema seeds on first frame and stays in the historical hull") {
  FusionState state;
  const GrayImage first = nft::random_gray(8, 6, 1);
  const GrayImage& seeded = ema_update(state, first, 0.9);
  CHECK(seeded.data == first.data);

  std::vector<float> lo(first.data), hi(first.data);
  std::mt19937 rng(7);
  for (int t = 0; t < 100; ++t) {
    const GrayImage next = nft::random_gray(8, 6, rng());
    for (size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], next.data[i]);
      hi[i] = std::max(hi[i], next.data[i]);
    }
    const GrayImage& acc = ema_update(state, next, 0.9);
    for (size_t i = 0; i < acc.data.size(); ++i) {
      CHECK(acc.data[i] >= lo[i] - 1e-6f);
      CHECK(acc.data[i] <= hi[i] + 1e-6f);
    }
  }
}

TEST_CASE("ema a=0 is pass-through") {
  FusionState state;
  ema_update(state, nft::random_gray(5, 5, 1), 0.0);
  const GrayImage next = nft::random_gray(5, 5, 2);
  const GrayImage& acc = ema_update(state, next, 0.0);
  for (size_t i = 0; i < acc.data.size(); ++i) {
    CHECK(acc.data[i] == doctest::Approx(next.data[i]).epsilon(1e-7));
  }
}

TEST_CASE("ema fixed point on repeated frames") {
  FusionState state;
  const GrayImage frame = nft::random_gray(6, 4, 3);
  ema_update(state, frame, 0.9);
  for (int t = 0; t < 20; ++t) {
    const GrayImage& acc = ema_update(state, frame, 0.9);
    for (size_t i = 0; i < acc.data.size(); ++i) {
      CHECK(acc.data[i] == doctest::Approx(frame.data[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("gain modulation closed forms and monotonicity") {
  RgbImage img(4, 4, 0.5f);
  const GrayImage zero(4, 4, 0.0f);
  const RgbImage dark = gain_modulate(img, zero, 0.7, 1.6);
  for (float v : dark.data) CHECK(v == doctest::Approx(0.35).epsilon(1e-7));

  const GrayImage one(4, 4, 1.0f);
  const RgbImage bright = gain_modulate(img, one, 0.7, 1.6);
  for (float v : bright.data) CHECK(v == 1.0f);  // 0.5 * 2.3 clips

  const RgbImage base = nft::random_rgb(12, 9, 31);
  const GrayImage la = nft::random_gray(12, 9, 32);
  GrayImage lb(12, 9);
  for (size_t i = 0; i < la.data.size(); ++i) {
    lb.data[i] = std::min(1.0f, la.data[i] + 0.05f);
  }
  const RgbImage out_a = gain_modulate(base, la, 0.7, 1.6);
  const RgbImage out_b = gain_modulate(base, lb, 0.7, 1.6);
  for (size_t i = 0; i < out_a.data.size(); ++i) CHECK(out_a.data[i] <= out_b.data[i]);
}

TEST_CASE("unsharp strength zero returns input bit exact") {
  const RgbImage img = nft::random_rgb(10, 10, 2);
  const RgbImage out = unsharp_mask(img, 0.0, 5);
  CHECK(out.data == img.data);
}

TEST_CASE("unsharp overshoots on the bright side of a step edge") {
  RgbImage img(32, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 32; ++x) {
      const float v = x < 16 ? 0.2f : 0.8f;
      float* px = img.px(x, y);
      px[0] = px[1] = px[2] = v;
    }
  }
  const RgbImage out = unsharp_mask(img, 0.5, 5);
  const RgbImage blurred = gaussian_blur(img, 5);
  // Direct convolution oracle: out = clip(I + s*(I - blur)).
  for (size_t i = 0; i < img.data.size(); ++i) {
    const double want =
        std::clamp(img.data[i] + 0.5 * (static_cast<double>(img.data[i]) - blurred.data[i]), 0.0,
                   1.0);
    CHECK(out.data[i] == doctest::Approx(want).epsilon(1e-6));
  }
  // Bright-side halo: just right of the edge exceeds the plateau value, and
  // the dark side undershoots.
  CHECK(out.px(16, 4)[0] > 0.8f);
  CHECK(out.px(15, 4)[0] < 0.2f);
}

TEST_CASE("fuse_frame is deterministic") {
  const RgbImage visible = nft::random_rgb(30, 22, 5);
  ThermalFrame thermal(15, 11);
  std::mt19937 rng(6);
  for (uint16_t& c : thermal.counts) c = static_cast<uint16_t>(rng() & 0xFFFF);
  FusionConfig cfg;
  FusionState s1, s2;
  const FuseResult a = fuse_frame(visible, thermal, cfg, s1);
  const FuseResult b = fuse_frame(visible, thermal, cfg, s2);
  CHECK(a.fused.data == b.fused.data);
  CHECK(a.l_hat.data == b.l_hat.data);
}

TEST_CASE("config validation rejects bad values") {
  FusionConfig cfg;
  cfg.ema_a = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = FusionConfig{};
  cfg.gauss_k = 6;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = FusionConfig{};
  cfg.p_low = 50.0;
  cfg.p_high = 40.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = FusionConfig{};
  cfg.guided_subsample = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

}  // TEST_SUITE
