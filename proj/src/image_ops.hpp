#pragma once

#include "image.hpp"

namespace nf {

// Linear-interpolated order statistic at rank p/100 * (n-1), p in [0,100].
double percentile(const std::vector<float>& values, double p);
double percentile(const GrayImage& img, double p);
double percentile(std::vector<double> values, double p);

// Maps [P(p_low), P(p_high)] to [0,1] and clips. A degenerate range
// (hi - lo < 1e-6) yields a constant 0.5 image.
GrayImage stretch_percentiles(const GrayImage& img, double p_low, double p_high);

// Bilinear resampling with half-pixel-aligned centers, clamped at borders.
GrayImage resize_bilinear(const GrayImage& img, int out_w, int out_h);

// Sliding-window mean over (2r+1)^2 with replicated borders.
GrayImage box_filter(const GrayImage& img, int r);

// Separable Gaussian, odd width k, sigma = 0.3*((k-1)/2 - 1) + 0.8,
// replicated borders, kernel normalized to unit sum.
GrayImage gaussian_blur(const GrayImage& img, int k);
RgbImage gaussian_blur(const RgbImage& img, int k);

std::vector<double> gaussian_kernel(int k);

}  // namespace nf
