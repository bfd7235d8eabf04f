#include "clahe.hpp"

#include <algorithm>
#include <cmath>

namespace nf {

namespace {

constexpr int kBins = 256;

int value_bin(float v) {
  const long b = std::lround(static_cast<double>(v) * 255.0);
  return b < 0 ? 0 : (b > 255 ? 255 : static_cast<int>(b));
}

}  // namespace

GrayImage clahe(const GrayImage& img, double clip_factor, int grid) {
  if (img.empty()) throw Error(ErrorCode::Empty, "clahe of empty image");
  if (!(clip_factor > 0.0)) throw Error(ErrorCode::InvalidArgument, "clahe clip must be > 0");
  if (grid < 1) throw Error(ErrorCode::InvalidArgument, "clahe grid must be >= 1");

  const int w = img.width;
  const int h = img.height;
  const int gx_n = std::min(grid, w);
  const int gy_n = std::min(grid, h);

  const auto [min_it, max_it] = std::minmax_element(img.data.begin(), img.data.end());
  const double vmin = *min_it;
  const double vmax = *max_it;
  const double vrange = vmax - vmin;

  // Per-tile clipped-histogram CDF mapped into [vmin, vmax].
  std::vector<double> mapping(static_cast<size_t>(gx_n) * gy_n * kBins);
  std::vector<double> cx(gx_n), cy(gy_n);
  for (int ty = 0; ty < gy_n; ++ty) {
    const int y0 = static_cast<int>(static_cast<int64_t>(ty) * h / gy_n);
    const int y1 = static_cast<int>(static_cast<int64_t>(ty + 1) * h / gy_n);
    cy[ty] = (y0 + y1 - 1) / 2.0;
    for (int tx = 0; tx < gx_n; ++tx) {
      const int x0 = static_cast<int>(static_cast<int64_t>(tx) * w / gx_n);
      const int x1 = static_cast<int>(static_cast<int64_t>(tx + 1) * w / gx_n);
      cx[tx] = (x0 + x1 - 1) / 2.0;
      double hist[kBins] = {};
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) hist[value_bin(img.at(x, y))] += 1.0;
      }
      const double n_tile = static_cast<double>(x1 - x0) * (y1 - y0);
      const double limit = clip_factor * n_tile / kBins;
      double excess = 0.0;
      for (double& c : hist) {
        if (c > limit) {
          excess += c - limit;
          c = limit;
        }
      }
      const double bonus = excess / kBins;
      double* m = &mapping[(static_cast<size_t>(ty) * gx_n + tx) * kBins];
      double cum = 0.0;
      for (int b = 0; b < kBins; ++b) {
        cum += hist[b] + bonus;
        m[b] = vmin + (cum / n_tile) * vrange;
      }
    }
  }

  // Bilinear blend of the four surrounding tile mappings, clamped at edges.
  std::vector<int> tx0(w), tx1(w);
  std::vector<double> fx(w);
  for (int x = 0; x < w; ++x) {
    int t = 0;
    while (t + 1 < gx_n && cx[t + 1] <= x) ++t;
    if (x <= cx[0]) {
      tx0[x] = tx1[x] = 0;
      fx[x] = 0.0;
    } else if (x >= cx[gx_n - 1]) {
      tx0[x] = tx1[x] = gx_n - 1;
      fx[x] = 0.0;
    } else {
      tx0[x] = t;
      tx1[x] = t + 1;
      fx[x] = (x - cx[t]) / (cx[t + 1] - cx[t]);
    }
  }
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    int t = 0;
    while (t + 1 < gy_n && cy[t + 1] <= y) ++t;
    int ty0 = t, ty1 = t;
    double fy = 0.0;
    if (y <= cy[0]) {
      ty0 = ty1 = 0;
    } else if (y >= cy[gy_n - 1]) {
      ty0 = ty1 = gy_n - 1;
    } else {
      ty1 = t + 1;
      fy = (y - cy[t]) / (cy[t + 1] - cy[t]);
    }
    const double* row_m0 = &mapping[static_cast<size_t>(ty0) * gx_n * kBins];
    const double* row_m1 = &mapping[static_cast<size_t>(ty1) * gx_n * kBins];
    for (int x = 0; x < w; ++x) {
      const int b = value_bin(img.at(x, y));
      const double top = row_m0[static_cast<size_t>(tx0[x]) * kBins + b] * (1.0 - fx[x]) +
                         row_m0[static_cast<size_t>(tx1[x]) * kBins + b] * fx[x];
      const double bot = row_m1[static_cast<size_t>(tx0[x]) * kBins + b] * (1.0 - fx[x]) +
                         row_m1[static_cast<size_t>(tx1[x]) * kBins + b] * fx[x];
      out.at(x, y) = clamp01(top * (1.0 - fy) + bot * fy);
    }
  }
  return out;
}

}  // namespace nf
