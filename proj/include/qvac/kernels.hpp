#pragma once

#include <array>

#include "qvac/units.hpp"

// Scalar kernels of the vacuum Green's-dyadic products entering the pair
// integrals: the universal oscillatory kernel phi(v), the gradient-product
// vector kernel at separation R, and the coincident-point imaginary part.
namespace qvac::kernels {

using Vec3 = std::array<double, 3>;

// phi(v) = -9 - 2v^2 - v^4 + (9 - 16v^2 + 3v^4) cos 2v + v (18 - 8v^2 + v^4) sin 2v.
// Seven leading digits cancel near v = 0; below kSeriesSwitch a power series
// (terms through v^20) is used instead of the closed form.
double phi(double v);

// phi(v)/v^8, finite everywhere (limit -4/9 at v = 0).  This is the stable
// form for near-contact kernel evaluation.
double phi_over_v8(double v);

inline constexpr double kSeriesSwitch = 0.35;

// (1/(4pi)^2) (R/R^8) phi(omega R); odd in R.  Evaluated through
// phi_over_v8 so the R -> 0 limit is exact (zero vector).
Vec3 grad_im_gamma_product(const Vec3& r_vec, double omega);

// Coefficient of the unit dyadic in Im Gamma at coincident points: omega^3/(6 pi).
double im_gamma_coincident(double omega);

// Universal kernel moments (closed forms):
//   int_0^inf phi(v)/v^6 dv = -11 pi/30     (line-line contact integrals)
//   int_0^inf phi(v)/v^7 dv = -2/3          (sheet-sheet contact integrals)
inline constexpr double kPhiMoment6 = -11.0 * units::pi / 30.0;
inline constexpr double kPhiMoment7 = -2.0 / 3.0;

}  // namespace qvac::kernels
