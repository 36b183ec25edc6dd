#pragma once

#include <array>
#include <string>

#include "qvac/geometry.hpp"
#include "qvac/materials.hpp"
#include "qvac/thermal.hpp"

namespace qvac::obs {

struct ObservableResult {
  double value_si = 0.0;       // N for forces, N m for torques
  double value_natural = 0.0;  // eV^2 for forces, eV for torques
  double dimensionless_reduced = 0.0;
  double numerical_error = 0.0;  // SI units
  bool converged = true;
  bool exact_zero = false;
  std::string note;
};

// F_z = 8 int_0^inf (dw/2pi) X_AB(w) I_AB(w) [n(bw) - n(b'w)].
// Equal temperatures, identical materials, or two lossless materials give an
// exact zero without quadrature.
ObservableResult force_z(const geom::TwoPartBody& body, const thermal::ThermalPair& th,
                         const quad::QuadratureSpec& spec);

// tau = (1/2pi^2) int_0^inf (dw/2pi) X_AB(w) [n - n'] J_AB(w).
std::array<ObservableResult, 3> torque_second_order(const geom::TwoPartBody& body,
                                                    const thermal::ThermalPair& th,
                                                    const quad::QuadratureSpec& spec);

// tauhat = int_0^inf dx x^4/(x^2+1) [n(beta nu x) - n(beta' nu x)], the
// reduced torque of the large-wrench scenario.
double torque_hat_integral(const thermal::ThermalPair& th, double nu,
                           const quad::QuadratureSpec& spec);

// First-order torque of a nonreciprocal body:
// tau_i = (1/3pi^2) int_0^inf dw w^3 [n(bw) - n(b'w)] eps_ijk Re alpha_jk(w).
// A symmetric-only Re alpha yields an exact zero with a diagnostic note.
std::array<ObservableResult, 3> torque_first_order(
    const materials::PolarizabilityTensor& alpha, const thermal::ThermalPair& th,
    const quad::QuadratureSpec& spec);

// True when the two material models are structurally identical.
bool materials_equal(const materials::MaterialModel& a, const materials::MaterialModel& b);

}  // namespace qvac::obs
