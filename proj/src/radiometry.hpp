#pragma once

#include <string>

#include "image.hpp"

namespace nf {

// Counts are centikelvin.
inline double raw_to_celsius(uint16_t counts) { return counts / 100.0 - 273.15; }

inline double query_celsius(const ThermalFrame& frame, int x, int y) {
  if (frame.empty()) throw Error(ErrorCode::Empty, "empty thermal frame");
  if (x < 0 || y < 0 || x >= frame.width || y >= frame.height) {
    throw Error(ErrorCode::OutOfBounds, "pixel (" + std::to_string(x) + "," + std::to_string(y) +
                                            ") outside " + std::to_string(frame.width) + "x" +
                                            std::to_string(frame.height) + " frame");
  }
  return raw_to_celsius(frame.at(x, y));
}

}  // namespace nf
