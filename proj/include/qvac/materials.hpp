#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace qvac::materials {

using Complex = std::complex<double>;

// chi real and frequency-independent (frequencies small compared to binding
// energies).
struct ConstantDielectric {
  double chi = 1.0;
};

// chi(w) = -omega_p^2 / (w^2 + i w nu).
struct Drude {
  double omega_p;  // plasma frequency, eV
  double nu;       // collision rate, eV
};

// Surface susceptibility chi~ = (i/4)/(w + i eps); reproduces Stefan's law
// for the radiated power of a plate.
struct BlackbodySurface {
  double epsilon_reg = 1e-6;  // eV
};

// Log-linear interpolation in omega of tabulated complex chi.  Extrapolation
// outside the grid is an error.
struct Tabulated {
  std::vector<double> omega;  // strictly increasing, > 0
  std::vector<Complex> chi;

  static Tabulated load(const std::string& path);  // "# comments; w Re Im" rows
};

using MaterialModel = std::variant<ConstantDielectric, Drude, BlackbodySurface, Tabulated>;

Complex chi(const MaterialModel& m, double omega);

// X = Im chi_A Re chi_B - Re chi_A Im chi_B (antisymmetric under A <-> B).
inline double x_product(Complex chi_a, Complex chi_b) {
  return chi_a.imag() * chi_b.real() - chi_a.real() * chi_b.imag();
}

double x_product(const MaterialModel& a, const MaterialModel& b, double omega);

// delta = sqrt(2 (w^2 + nu^2) / (w omega_p^2 nu)); minimum 2/omega_p at w = nu.
double skin_depth(const Drude& m, double omega);
double skin_depth(const MaterialModel& m, double omega);  // usage error unless Drude

// 3x3 complex tensor, row-major.
using Mat3c = std::array<Complex, 9>;
using PolarizabilityFn = std::function<Mat3c(double omega)>;

// Caller-supplied mean-polarizability tensor alpha_jk(w) (volume integral of
// chi_jk already performed).
struct PolarizabilityTensor {
  PolarizabilityFn alpha;
};

// Mean polarizability of an isotropic two-part body: (V_A chi_A + V_B chi_B) * 1.
Mat3c mean_polarizability(double volume_a, const MaterialModel& a, double volume_b,
                          const MaterialModel& b, double omega);

bool is_drude(const MaterialModel& m);
bool is_lossless(const MaterialModel& m);  // Im chi identically zero

}  // namespace qvac::materials
