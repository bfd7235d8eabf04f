#include "guided.hpp"

#include <algorithm>
#include <cmath>

#include "image_ops.hpp"

namespace nf {

namespace {

void check_guided_args(const GrayImage& p, const GrayImage& guide, int r, double eps) {
  if (p.empty() || guide.empty()) throw Error(ErrorCode::Empty, "guided filter of empty image");
  if (p.width != guide.width || p.height != guide.height) {
    throw Error(ErrorCode::DimensionMismatch, "guided filter input and guide sizes differ");
  }
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "guided radius must be >= 1");
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "guided eps must be > 0");
}

struct GuidedCoeffs {
  GrayImage mean_a, mean_b;
};

GuidedCoeffs guided_coeffs(const GrayImage& p, const GrayImage& guide, int r, double eps) {
  const size_t n = p.pixels();
  GrayImage ip(p.width, p.height), ii(p.width, p.height);
  for (size_t i = 0; i < n; ++i) {
    const double g = guide.data[i];
    ip.data[i] = static_cast<float>(g * static_cast<double>(p.data[i]));
    ii.data[i] = static_cast<float>(g * g);
  }
  const GrayImage mean_i = box_filter(guide, r);
  const GrayImage mean_p = box_filter(p, r);
  const GrayImage corr_ip = box_filter(ip, r);
  const GrayImage corr_ii = box_filter(ii, r);
  GrayImage a(p.width, p.height), b(p.width, p.height);
  for (size_t i = 0; i < n; ++i) {
    const double mi = mean_i.data[i];
    const double mp = mean_p.data[i];
    const double var_i = static_cast<double>(corr_ii.data[i]) - mi * mi;
    const double cov_ip = static_cast<double>(corr_ip.data[i]) - mi * mp;
    const double av = cov_ip / (var_i + eps);
    a.data[i] = static_cast<float>(av);
    b.data[i] = static_cast<float>(mp - av * mi);
  }
  return {box_filter(a, r), box_filter(b, r)};
}

}  // namespace

GrayImage guided_filter(const GrayImage& p, const GrayImage& guide, int r, double eps) {
  check_guided_args(p, guide, r, eps);
  const GuidedCoeffs c = guided_coeffs(p, guide, r, eps);
  GrayImage out(p.width, p.height);
  for (size_t i = 0; i < p.pixels(); ++i) {
    out.data[i] = static_cast<float>(static_cast<double>(c.mean_a.data[i]) * guide.data[i] +
                                     c.mean_b.data[i]);
  }
  return out;
}

GrayImage fast_guided_filter(const GrayImage& p, const GrayImage& guide, int r, double eps,
                             int s) {
  check_guided_args(p, guide, r, eps);
  if (s <= 1) return guided_filter(p, guide, r, eps);
  const int dw = std::max(1, static_cast<int>(std::llround(p.width / static_cast<double>(s))));
  const int dh = std::max(1, static_cast<int>(std::llround(p.height / static_cast<double>(s))));
  const GrayImage p_small = resize_bilinear(p, dw, dh);
  const GrayImage g_small = resize_bilinear(guide, dw, dh);
  const int r_small = std::max(1, r / s);
  const GuidedCoeffs c = guided_coeffs(p_small, g_small, r_small, eps);
  const GrayImage a_up = resize_bilinear(c.mean_a, p.width, p.height);
  const GrayImage b_up = resize_bilinear(c.mean_b, p.width, p.height);
  GrayImage out(p.width, p.height);
  for (size_t i = 0; i < p.pixels(); ++i) {
    out.data[i] = static_cast<float>(static_cast<double>(a_up.data[i]) * guide.data[i] +
                                     b_up.data[i]);
  }
  return out;
}

}  // namespace nf
