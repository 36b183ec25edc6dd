#include "qvac/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace qvac::kernels {

namespace {

// Power-series coefficients of phi(v) = sum c_k v^(2k+8), k = 0..6.
constexpr double kSeries[] = {
    -4.0 / 9.0,
    28.0 / 225.0,
    -22.0 / 1575.0,
    256.0 / 297675.0,
    -2.0 / 59535.0,
    116.0 / 127702575.0,
    -74.0 / 4104725625.0,
};

double phi_series_over_v8(double v2) {
  double s = kSeries[6];
  for (int k = 5; k >= 0; --k) s = kSeries[k] + v2 * s;
  return s;
}

double phi_closed(double v) {
  const double v2 = v * v;
  const double v4 = v2 * v2;
  const double s = std::sin(2.0 * v);
  const double c = std::cos(2.0 * v);
  return -9.0 - 2.0 * v2 - v4 + (9.0 - 16.0 * v2 + 3.0 * v4) * c +
         v * (18.0 - 8.0 * v2 + v4) * s;
}

}  // namespace

double phi(double v) {
  if (!std::isfinite(v)) throw std::domain_error("phi: non-finite argument");
  const double a = std::fabs(v);
  if (a < kSeriesSwitch) {
    const double v2 = a * a;
    const double v8 = v2 * v2 * v2 * v2;
    return v8 * phi_series_over_v8(v2);
  }
  return phi_closed(a);
}

double phi_over_v8(double v) {
  if (!std::isfinite(v)) throw std::domain_error("phi_over_v8: non-finite argument");
  const double a = std::fabs(v);
  if (a < kSeriesSwitch) return phi_series_over_v8(a * a);
  const double v2 = a * a;
  const double v8 = v2 * v2 * v2 * v2;
  return phi_closed(a) / v8;
}

Vec3 grad_im_gamma_product(const Vec3& r_vec, double omega) {
  const double r2 = r_vec[0] * r_vec[0] + r_vec[1] * r_vec[1] + r_vec[2] * r_vec[2];
  const double r = std::sqrt(r2);
  const double w = omega;
  // (R/R^8) phi(wR) = R_hat * w^7 * (wR) * phi(v)/v^8, finite as R -> 0.
  const double v = w * r;
  const double w2 = w * w;
  const double w7 = w2 * w2 * w2 * w;
  const double coeff = 1.0 / (16.0 * units::pi * units::pi);
  if (r == 0.0) return {0.0, 0.0, 0.0};
  const double scale = coeff * w7 * v * phi_over_v8(v) / r;
  return {scale * r_vec[0], scale * r_vec[1], scale * r_vec[2]};
}

double im_gamma_coincident(double omega) {
  return omega * omega * omega / (6.0 * units::pi);
}

}  // namespace qvac::kernels
