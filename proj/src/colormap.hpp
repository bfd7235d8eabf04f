#pragma once

#include "image.hpp"

namespace nf {

// Renders a [0,1] gray image through the inferno colormap (fixed range, no
// per-frame normalization).
RgbImage apply_inferno(const GrayImage& img);

}  // namespace nf
