#include "image.hpp"

namespace nf {

void require_dims(int w, int h) {
  if (w < 1 || h < 1) {
    throw Error(ErrorCode::InvalidArgument, "image dimensions must be at least 1x1");
  }
}

GrayImage::GrayImage(int w, int h, float fill) : width(w), height(h) {
  require_dims(w, h);
  data.assign(static_cast<size_t>(w) * h, fill);
}

RgbImage::RgbImage(int w, int h, float fill) : width(w), height(h) {
  require_dims(w, h);
  data.assign(static_cast<size_t>(w) * h * 3, fill);
}

ThermalFrame::ThermalFrame(int w, int h, uint16_t fill) : width(w), height(h) {
  require_dims(w, h);
  counts.assign(static_cast<size_t>(w) * h, fill);
}

YcbcrPlanes rgb_to_ycbcr(const RgbImage& rgb) {
  YcbcrPlanes out{GrayImage(rgb.width, rgb.height), GrayImage(rgb.width, rgb.height),
                  GrayImage(rgb.width, rgb.height)};
  const size_t n = rgb.pixels();
  for (size_t i = 0; i < n; ++i) {
    const double r = rgb.data[i * 3 + 0];
    const double g = rgb.data[i * 3 + 1];
    const double b = rgb.data[i * 3 + 2];
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    out.y.data[i] = static_cast<float>(y);
    out.cb.data[i] = static_cast<float>(0.5 + (b - y) * 0.564);
    out.cr.data[i] = static_cast<float>(0.5 + (r - y) * 0.713);
  }
  return out;
}

RgbImage ycbcr_to_rgb(const YcbcrPlanes& planes) {
  const GrayImage& y = planes.y;
  if (planes.cb.width != y.width || planes.cb.height != y.height ||
      planes.cr.width != y.width || planes.cr.height != y.height) {
    throw Error(ErrorCode::DimensionMismatch, "YCbCr planes must share dimensions");
  }
  RgbImage out(y.width, y.height);
  const size_t n = y.pixels();
  for (size_t i = 0; i < n; ++i) {
    const double yy = y.data[i];
    const double cb = planes.cb.data[i] - 0.5;
    const double cr = planes.cr.data[i] - 0.5;
    const double r = yy + cr / 0.713;
    const double b = yy + cb / 0.564;
    const double g = (yy - 0.299 * r - 0.114 * b) / 0.587;
    out.data[i * 3 + 0] = clamp01(r);
    out.data[i * 3 + 1] = clamp01(g);
    out.data[i * 3 + 2] = clamp01(b);
  }
  return out;
}

GrayImage luminance(const RgbImage& rgb) {
  GrayImage out(rgb.width, rgb.height);
  const size_t n = rgb.pixels();
  for (size_t i = 0; i < n; ++i) {
    out.data[i] = static_cast<float>(0.299 * rgb.data[i * 3 + 0] + 0.587 * rgb.data[i * 3 + 1] +
                                     0.114 * rgb.data[i * 3 + 2]);
  }
  return out;
}

}  // namespace nf
