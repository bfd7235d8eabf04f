#include "image_ops.hpp"

#include <algorithm>
#include <cmath>

namespace nf {

namespace {

template <typename T>
double interpolated_rank(std::vector<T>& values, double p) {
  if (values.empty()) throw Error(ErrorCode::Empty, "percentile of empty input");
  if (!(p >= 0.0 && p <= 100.0)) {
    throw Error(ErrorCode::InvalidArgument, "percentile must be in [0,100]");
  }
  const size_t n = values.size();
  const double rank = p / 100.0 * static_cast<double>(n - 1);
  const size_t lo = static_cast<size_t>(rank);
  const double frac = rank - static_cast<double>(lo);
  std::nth_element(values.begin(), values.begin() + lo, values.end());
  const double v_lo = values[lo];
  if (frac == 0.0 || lo + 1 >= n) return v_lo;
  const double v_hi = *std::min_element(values.begin() + lo + 1, values.end());
  return v_lo + frac * (v_hi - v_lo);
}

int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

// Horizontal then vertical pass; with replicated borders the separable mean
// equals the full-window mean.
void box_pass_rows(const float* in, float* out, int w, int h, int r) {
  const int win = 2 * r + 1;
  for (int y = 0; y < h; ++y) {
    const float* row = in + static_cast<size_t>(y) * w;
    float* orow = out + static_cast<size_t>(y) * w;
    double sum = 0.0;
    for (int dx = -r; dx <= r; ++dx) sum += row[clamp_index(dx, w)];
    orow[0] = static_cast<float>(sum / win);
    for (int x = 1; x < w; ++x) {
      sum += row[clamp_index(x + r, w)];
      sum -= row[clamp_index(x - 1 - r, w)];
      orow[x] = static_cast<float>(sum / win);
    }
  }
}

void box_pass_cols(const float* in, float* out, int w, int h, int r) {
  const int win = 2 * r + 1;
  std::vector<double> sums(w, 0.0);
  for (int dy = -r; dy <= r; ++dy) {
    const float* row = in + static_cast<size_t>(clamp_index(dy, h)) * w;
    for (int x = 0; x < w; ++x) sums[x] += row[x];
  }
  for (int y = 0; y < h; ++y) {
    float* orow = out + static_cast<size_t>(y) * w;
    for (int x = 0; x < w; ++x) orow[x] = static_cast<float>(sums[x] / win);
    if (y + 1 < h) {
      const float* add = in + static_cast<size_t>(clamp_index(y + 1 + r, h)) * w;
      const float* sub = in + static_cast<size_t>(clamp_index(y - r, h)) * w;
      for (int x = 0; x < w; ++x) sums[x] += add[x] - sub[x];
    }
  }
}

void gaussian_pass(const float* in, float* out, int count, int stride, int n_lines,
                   int line_stride, const std::vector<double>& kernel) {
  const int r = static_cast<int>(kernel.size()) / 2;
  for (int line = 0; line < n_lines; ++line) {
    const float* src = in + static_cast<size_t>(line) * line_stride;
    float* dst = out + static_cast<size_t>(line) * line_stride;
    for (int i = 0; i < count; ++i) {
      double acc = 0.0;
      for (int t = -r; t <= r; ++t) {
        acc += kernel[t + r] * src[static_cast<size_t>(clamp_index(i + t, count)) * stride];
      }
      dst[static_cast<size_t>(i) * stride] = static_cast<float>(acc);
    }
  }
}

}  // namespace

double percentile(const GrayImage& img, double p) {
  std::vector<float> tmp(img.data);
  return interpolated_rank(tmp, p);
}

double percentile(const std::vector<float>& values, double p) {
  std::vector<float> tmp(values);
  return interpolated_rank(tmp, p);
}

double percentile(std::vector<double> values, double p) { return interpolated_rank(values, p); }

GrayImage stretch_percentiles(const GrayImage& img, double p_low, double p_high) {
  if (img.empty()) throw Error(ErrorCode::Empty, "stretch of empty image");
  if (!(p_low >= 0.0 && p_high <= 100.0 && p_low < p_high)) {
    throw Error(ErrorCode::InvalidArgument, "stretch needs 0 <= p_low < p_high <= 100");
  }
  const double lo = percentile(img, p_low);
  const double hi = percentile(img, p_high);
  GrayImage out(img.width, img.height);
  if (hi - lo < 1e-6) {
    std::fill(out.data.begin(), out.data.end(), 0.5f);
    return out;
  }
  const double scale = 1.0 / (hi - lo);
  for (size_t i = 0; i < img.data.size(); ++i) {
    out.data[i] = clamp01((img.data[i] - lo) * scale);
  }
  return out;
}

GrayImage resize_bilinear(const GrayImage& img, int out_w, int out_h) {
  if (img.empty()) throw Error(ErrorCode::Empty, "resize of empty image");
  require_dims(out_w, out_h);
  if (out_w == img.width && out_h == img.height) return img;
  GrayImage out(out_w, out_h);
  const double sx = static_cast<double>(img.width) / out_w;
  const double sy = static_cast<double>(img.height) / out_h;
  std::vector<int> x0(out_w), x1(out_w);
  std::vector<double> wx(out_w);
  for (int x = 0; x < out_w; ++x) {
    double src = (x + 0.5) * sx - 0.5;
    if (src < 0.0) src = 0.0;
    if (src > img.width - 1.0) src = img.width - 1.0;
    x0[x] = static_cast<int>(src);
    x1[x] = std::min(x0[x] + 1, img.width - 1);
    wx[x] = src - x0[x];
  }
  for (int y = 0; y < out_h; ++y) {
    double src = (y + 0.5) * sy - 0.5;
    if (src < 0.0) src = 0.0;
    if (src > img.height - 1.0) src = img.height - 1.0;
    const int y0 = static_cast<int>(src);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double wy = src - y0;
    const float* row0 = &img.data[static_cast<size_t>(y0) * img.width];
    const float* row1 = &img.data[static_cast<size_t>(y1) * img.width];
    float* orow = &out.data[static_cast<size_t>(y) * out_w];
    for (int x = 0; x < out_w; ++x) {
      const double top = row0[x0[x]] + (row0[x1[x]] - row0[x0[x]]) * wx[x];
      const double bot = row1[x0[x]] + (row1[x1[x]] - row1[x0[x]]) * wx[x];
      orow[x] = static_cast<float>(top + (bot - top) * wy);
    }
  }
  return out;
}

GrayImage box_filter(const GrayImage& img, int r) {
  if (img.empty()) throw Error(ErrorCode::Empty, "box filter of empty image");
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "box radius must be >= 0");
  if (r == 0) return img;
  GrayImage tmp(img.width, img.height);
  GrayImage out(img.width, img.height);
  box_pass_rows(img.data.data(), tmp.data.data(), img.width, img.height, r);
  box_pass_cols(tmp.data.data(), out.data.data(), img.width, img.height, r);
  return out;
}

std::vector<double> gaussian_kernel(int k) {
  if (k < 1 || k % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "gaussian width must be odd and >= 1");
  }
  const int r = (k - 1) / 2;
  const double sigma = 0.3 * (r - 1) + 0.8;
  std::vector<double> kernel(k);
  double sum = 0.0;
  for (int t = -r; t <= r; ++t) {
    kernel[t + r] = std::exp(-(static_cast<double>(t) * t) / (2.0 * sigma * sigma));
    sum += kernel[t + r];
  }
  for (double& v : kernel) v /= sum;
  return kernel;
}

GrayImage gaussian_blur(const GrayImage& img, int k) {
  if (img.empty()) throw Error(ErrorCode::Empty, "blur of empty image");
  const std::vector<double> kernel = gaussian_kernel(k);
  if (k == 1) return img;
  GrayImage tmp(img.width, img.height);
  GrayImage out(img.width, img.height);
  gaussian_pass(img.data.data(), tmp.data.data(), img.width, 1, img.height, img.width, kernel);
  gaussian_pass(tmp.data.data(), out.data.data(), img.height, img.width, img.width, 1, kernel);
  return out;
}

RgbImage gaussian_blur(const RgbImage& img, int k) {
  if (img.empty()) throw Error(ErrorCode::Empty, "blur of empty image");
  const std::vector<double> kernel = gaussian_kernel(k);
  if (k == 1) return img;
  RgbImage out(img.width, img.height);
  GrayImage plane(img.width, img.height);
  GrayImage tmp(img.width, img.height);
  GrayImage blurred(img.width, img.height);
  for (int c = 0; c < 3; ++c) {
    const size_t n = img.pixels();
    for (size_t i = 0; i < n; ++i) plane.data[i] = img.data[i * 3 + c];
    gaussian_pass(plane.data.data(), tmp.data.data(), img.width, 1, img.height, img.width,
                  kernel);
    gaussian_pass(tmp.data.data(), blurred.data.data(), img.height, img.width, img.width, 1,
                  kernel);
    for (size_t i = 0; i < n; ++i) out.data[i * 3 + c] = blurred.data[i];
  }
  return out;
}

}  // namespace nf
