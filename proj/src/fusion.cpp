#include "fusion.hpp"

#include <cmath>
#include <utility>

#include "clahe.hpp"
#include "guided.hpp"
#include "image_ops.hpp"

namespace nf {

void FusionConfig::validate() const {
  if (!(p_low >= 0.0 && p_high <= 100.0 && p_low < p_high)) {
    throw Error(ErrorCode::InvalidArgument, "fusion percentiles need 0 <= p_low < p_high <= 100");
  }
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be > 0");
  if (!(ema_a >= 0.0 && ema_a < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "ema factor must be in [0,1)");
  }
  if (gauss_k < 1 || gauss_k % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "gauss_k must be odd and >= 1");
  }
  if (unsharp_k < 1 || unsharp_k % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "unsharp_k must be odd and >= 1");
  }
  if (!(unsharp_strength >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "unsharp strength must be >= 0");
  }
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "gain terms must be >= 0");
  }
  if (clahe_enabled) {
    if (!(clahe_clip > 0.0)) throw Error(ErrorCode::InvalidArgument, "clahe clip must be > 0");
    if (clahe_grid < 1) throw Error(ErrorCode::InvalidArgument, "clahe grid must be >= 1");
  }
  if (guided_radius < 1) throw Error(ErrorCode::InvalidArgument, "guided radius must be >= 1");
  if (!(guided_eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "guided eps must be > 0");
  if (guided_subsample < 1) {
    throw Error(ErrorCode::InvalidArgument, "guided subsample must be >= 1");
  }
}

GrayImage thermal_to_unit(const ThermalFrame& frame) {
  if (frame.empty()) throw Error(ErrorCode::Empty, "empty thermal frame");
  GrayImage out(frame.width, frame.height);
  for (size_t i = 0; i < frame.counts.size(); ++i) {
    out.data[i] = static_cast<float>(frame.counts[i] / 65535.0);
  }
  return out;
}

GrayImage illumination_proxy(const GrayImage& thermal01, int out_w, int out_h,
                             const FusionConfig& cfg) {
  GrayImage resized = resize_bilinear(thermal01, out_w, out_h);
  GrayImage stretched = stretch_percentiles(resized, cfg.p_low, cfg.p_high);
  for (float& v : stretched.data) {
    v = static_cast<float>(std::pow(static_cast<double>(v), cfg.gamma));
  }
  return gaussian_blur(stretched, cfg.gauss_k);
}

const GrayImage& ema_update(FusionState& state, GrayImage l_tilde, double a) {
  if (!state.l_hat.has_value()) {
    state.l_hat = std::move(l_tilde);
    return *state.l_hat;
  }
  GrayImage& acc = *state.l_hat;
  if (acc.width != l_tilde.width || acc.height != l_tilde.height) {
    throw Error(ErrorCode::DimensionMismatch, "frame size changed mid-sequence");
  }
  for (size_t i = 0; i < acc.data.size(); ++i) {
    acc.data[i] =
        static_cast<float>(a * static_cast<double>(acc.data[i]) + (1.0 - a) * l_tilde.data[i]);
  }
  return acc;
}

RgbImage gain_modulate(const RgbImage& img, const GrayImage& l_hat, double alpha, double beta) {
  if (img.width != l_hat.width || img.height != l_hat.height) {
    throw Error(ErrorCode::DimensionMismatch, "gain map size differs from image");
  }
  RgbImage out(img.width, img.height);
  const size_t n = img.pixels();
  for (size_t i = 0; i < n; ++i) {
    const double g = alpha + beta * static_cast<double>(l_hat.data[i]);
    out.data[i * 3 + 0] = clamp01(img.data[i * 3 + 0] * g);
    out.data[i * 3 + 1] = clamp01(img.data[i * 3 + 1] * g);
    out.data[i * 3 + 2] = clamp01(img.data[i * 3 + 2] * g);
  }
  return out;
}

RgbImage unsharp_mask(const RgbImage& img, double strength, int k) {
  if (!(strength >= 0.0)) throw Error(ErrorCode::InvalidArgument, "unsharp strength must be >= 0");
  if (strength == 0.0) return img;
  const RgbImage blurred = gaussian_blur(img, k);
  RgbImage out(img.width, img.height);
  for (size_t i = 0; i < img.data.size(); ++i) {
    const double v = img.data[i];
    out.data[i] = clamp01(v + strength * (v - blurred.data[i]));
  }
  return out;
}

FuseResult fuse_frame(const RgbImage& visible, const ThermalFrame& thermal,
                      const FusionConfig& cfg, FusionState& state) {
  cfg.validate();
  if (visible.empty()) throw Error(ErrorCode::Empty, "empty visible frame");
  const GrayImage proxy =
      illumination_proxy(thermal_to_unit(thermal), visible.width, visible.height, cfg);
  const GrayImage guide = luminance(visible);
  GrayImage refined = cfg.guided_mode == GuidedMode::Fast
                          ? fast_guided_filter(proxy, guide, cfg.guided_radius, cfg.guided_eps,
                                               cfg.guided_subsample)
                          : guided_filter(proxy, guide, cfg.guided_radius, cfg.guided_eps);
  for (float& v : refined.data) v = clamp01(v);
  const GrayImage& l_hat = ema_update(state, std::move(refined), cfg.ema_a);
  state.frame_index += 1;

  RgbImage fused = gain_modulate(visible, l_hat, cfg.alpha, cfg.beta);
  fused = unsharp_mask(fused, cfg.unsharp_strength, cfg.unsharp_k);
  if (cfg.clahe_enabled) {
    YcbcrPlanes planes = rgb_to_ycbcr(fused);
    planes.y = clahe(planes.y, cfg.clahe_clip, cfg.clahe_grid);
    fused = ycbcr_to_rgb(planes);
  }
  return {std::move(fused), *state.l_hat};
}

}  // namespace nf
