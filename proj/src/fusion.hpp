#pragma once

#include <cstdint>
#include <optional>

#include "image.hpp"

namespace nf {

enum class GuidedMode { Exact, Fast };

struct FusionConfig {
  double p_low = 2.0;
  double p_high = 98.0;
  double gamma = 0.7;
  double ema_a = 0.9;
  int gauss_k = 7;
  double alpha = 0.7;
  double beta = 1.6;
  double unsharp_strength = 0.5;
  int unsharp_k = 5;
  bool clahe_enabled = true;
  double clahe_clip = 2.0;
  int clahe_grid = 8;
  int guided_radius = 8;
  double guided_eps = 0.01;
  int guided_subsample = 4;
  GuidedMode guided_mode = GuidedMode::Exact;

  void validate() const;
};

struct FusionState {
  std::optional<GrayImage> l_hat;
  int64_t frame_index = 0;
};

// Normalized thermal mapped to the visible resolution: resize, percentile
// stretch, gamma, blur.
GrayImage illumination_proxy(const GrayImage& thermal01, int out_w, int out_h,
                             const FusionConfig& cfg);

// counts / 65535 into [0,1].
GrayImage thermal_to_unit(const ThermalFrame& frame);

// l_hat <- a * l_hat + (1-a) * l_tilde; the first frame seeds the state.
const GrayImage& ema_update(FusionState& state, GrayImage l_tilde, double a);

// I * (alpha + beta * l_hat) per channel, clipped.
RgbImage gain_modulate(const RgbImage& img, const GrayImage& l_hat, double alpha, double beta);

// I + strength * (I - blur(I, k)), clipped. strength = 0 returns the input.
RgbImage unsharp_mask(const RgbImage& img, double strength, int k);

struct FuseResult {
  RgbImage fused;
  GrayImage l_hat;
};

// Full per-frame pipeline: proxy -> guided refinement against the visible
// luminance -> EMA -> gain modulation -> unsharp -> optional CLAHE on Y.
FuseResult fuse_frame(const RgbImage& visible, const ThermalFrame& thermal,
                      const FusionConfig& cfg, FusionState& state);

}  // namespace nf
