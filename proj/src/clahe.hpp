#pragma once

#include "image.hpp"

namespace nf {

// Contrast-limited adaptive histogram equalization over a grid x grid tiling
// (256 bins). Per tile, counts above clip_factor * tile_pixels / 256 are
// redistributed uniformly; tile CDFs map into the global [min, max] value
// range and pixels blend the four surrounding tile mappings bilinearly.
// grid = 1 degenerates to global equalization; a uniform image is a fixed
// point.
GrayImage clahe(const GrayImage& img, double clip_factor, int grid);

}  // namespace nf
