#pragma once

#include "image.hpp"

namespace nf {

// Edge-preserving refinement of p steered by guide I (He et al. style):
// a = cov(I,p) / (var(I) + eps), b = mean(p) - a * mean(I), all means over
// (2r+1)^2 box windows; output = box(a) * I + box(b).
GrayImage guided_filter(const GrayImage& p, const GrayImage& guide, int r, double eps);

// Subsampled variant: coefficients computed at 1/s scale with radius
// max(1, r/s), then upsampled bilinearly. s <= 1 falls through to the exact
// filter.
GrayImage fast_guided_filter(const GrayImage& p, const GrayImage& guide, int r, double eps,
                             int s);

}  // namespace nf
