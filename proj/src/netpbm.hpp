#pragma once

#include <string>

#include "image.hpp"

namespace nf {

// 8-bit binary PPM (P6, maxval 255); bytes map to v/255.
RgbImage read_ppm8(const std::string& path);
// Writes with round(clip(v) * 255).
void write_ppm8(const RgbImage& img, const std::string& path);

void write_pgm8(const GrayImage& img, const std::string& path);

// 16-bit binary PGM (P5, maxval 65535), big-endian sample order.
ThermalFrame read_pgm16(const std::string& path);
void write_pgm16(const ThermalFrame& frame, const std::string& path);

}  // namespace nf
