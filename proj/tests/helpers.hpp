#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "image.hpp"

namespace nft {

inline nf::GrayImage make_gray(int w, int h, const std::function<float(int, int)>& f) {
  nf::GrayImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img.at(x, y) = f(x, y);
  }
  return img;
}

inline nf::GrayImage random_gray(int w, int h, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  nf::GrayImage img(w, h);
  for (float& v : img.data) v = dist(rng);
  return img;
}

inline nf::RgbImage random_rgb(int w, int h, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  nf::RgbImage img(w, h);
  for (float& v : img.data) v = dist(rng);
  return img;
}

// Smooth low-frequency field in [0,1].
inline nf::GrayImage smooth_gray(int w, int h, uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const double fx = 0.5 + 1.0 * dist(rng);
  const double fy = 0.5 + 1.0 * dist(rng);
  const double px = 6.2831853 * dist(rng);
  const double py = 6.2831853 * dist(rng);
  nf::GrayImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = 0.5 + 0.25 * std::sin(fx * 6.2831853 * x / w + px) +
                       0.25 * std::cos(fy * 6.2831853 * y / h + py);
      img.at(x, y) = nf::clamp01(v);
    }
  }
  return img;
}

// Direct windowed mean with replicated borders; the reference the fast box
// filter must match.
inline nf::GrayImage box_mean_brute(const nf::GrayImage& img, int r) {
  nf::GrayImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double sum = 0.0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const int sx = std::clamp(x + dx, 0, img.width - 1);
          const int sy = std::clamp(y + dy, 0, img.height - 1);
          sum += img.at(sx, sy);
        }
      }
      out.at(x, y) = static_cast<float>(sum / ((2.0 * r + 1) * (2 * r + 1)));
    }
  }
  return out;
}

}  // namespace nft
