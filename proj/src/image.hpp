#pragma once

#include <cstdint>
#include <vector>

#include "error.hpp"

namespace nf {

// Single-channel float image, row-major, values nominally in [0,1].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  GrayImage() = default;
  GrayImage(int w, int h, float fill = 0.0f);

  float at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
  float& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  bool empty() const { return data.empty(); }
  size_t pixels() const { return data.size(); }
};

// Interleaved RGB float image, row-major, values nominally in [0,1].
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;  // 3 * width * height

  RgbImage() = default;
  RgbImage(int w, int h, float fill = 0.0f);

  const float* px(int x, int y) const { return &data[(static_cast<size_t>(y) * width + x) * 3]; }
  float* px(int x, int y) { return &data[(static_cast<size_t>(y) * width + x) * 3]; }
  bool empty() const { return data.empty(); }
  size_t pixels() const { return static_cast<size_t>(width) * height; }
};

// Raw 16-bit thermal counts.
struct ThermalFrame {
  int width = 0;
  int height = 0;
  std::vector<uint16_t> counts;

  ThermalFrame() = default;
  ThermalFrame(int w, int h, uint16_t fill = 0);

  uint16_t at(int x, int y) const { return counts[static_cast<size_t>(y) * width + x]; }
  uint16_t& at(int x, int y) { return counts[static_cast<size_t>(y) * width + x]; }
  bool empty() const { return counts.empty(); }
};

inline float clamp01(double v) {
  if (v < 0.0) return 0.0f;
  if (v > 1.0) return 1.0f;
  return static_cast<float>(v);
}

void require_dims(int w, int h);

struct YcbcrPlanes {
  GrayImage y, cb, cr;
};

// BT.601 full range. The inverse clips each channel to [0,1].
YcbcrPlanes rgb_to_ycbcr(const RgbImage& rgb);
RgbImage ycbcr_to_rgb(const YcbcrPlanes& planes);
GrayImage luminance(const RgbImage& rgb);

}  // namespace nf
