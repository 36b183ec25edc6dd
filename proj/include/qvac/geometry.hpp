#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "qvac/materials.hpp"
#include "qvac/mc.hpp"
#include "qvac/quadrature.hpp"

// Body descriptors and the geometric pair integrals entering the force
// (I_AB) and torque (J_AB) assemblies.  Thin structures are integrated on
// their lower-dimensional skeletons with the cross-section / thickness
// factors pulled out.
//
// Orientation convention: part A occupies the +z side, part B the -z side.
// The wrench and flags lie in the z = 0 plane with the central wire along y.
namespace qvac::geom {

using materials::MaterialModel;

// Part A along z in (0, a], part B along z in [-b, 0); cross section S.
struct Needle {
  double a, b, S;
};

// Spherical shell of radius a and thickness t; A is the upper hemisphere.
struct HemisphereShell {
  double a, t;
};

// Ball of radius a; A is the upper half-ball.
struct JanusBall {
  double a;
};

// Infinite-plate model of area S: surface sheet A (no thickness measure;
// its susceptibility is a surface susceptibility) on top of a slab B of
// thickness t_B.  t_A enters only through the sheet offset.
struct PlanarSlab {
  double S, t_A, t_B;
};

// Central wire A along y in [-a, a]; tags B along x: one at y = -a toward
// +x, its mirror image at y = +a toward -x, each of length b.
struct AllenWrench {
  double a, b, S_A, S_B;
};

// Wrench with each tag replaced by a thin sheet (flag) of width b (along x),
// height h (along y, inward from the attachment), thickness t.
struct DualFlags {
  double a, b, h, t, S_A;
};

// Point clouds with per-point volume weights (natural units).
struct VoxelCloud {
  std::vector<std::array<double, 4>> a_points;  // x, y, z, weight
  std::vector<std::array<double, 4>> b_points;
};

using Shape = std::variant<Needle, HemisphereShell, JanusBall, PlanarSlab,
                           AllenWrench, DualFlags, VoxelCloud>;

struct TwoPartBody {
  Shape shape;
  MaterialModel material_A;
  MaterialModel material_B;
  double rho_A = 0.0;  // mass density, eV^4
  double rho_B = 0.0;
};

double volume_a(const Shape& s);
double volume_b(const Shape& s);

// Geometric force integral I_AB(w) (z-projected, includes the kernel's
// 1/(16 pi^2)).  The Janus ball uses the closed small-argument form below
// w*a = 0.2 and Monte Carlo above it; the planar wrench and flags give an
// exact zero.
quad::IntegralResult i_ab(const TwoPartBody& body, double omega,
                          const quad::QuadratureSpec& spec);

// Geometric torque integral J_AB(w) (no 1/(16 pi^2), following the torque
// assembly's bookkeeping); components x, y, z.
std::array<quad::IntegralResult, 3> j_ab(const TwoPartBody& body, double omega,
                                         const quad::QuadratureSpec& spec);

// tail integral of phi: Psi(x) = int_x^inf phi(v)/v^7 dv  (Psi(0) = -2/3).
double psi7(double x, const quad::QuadratureSpec& spec);

// Shell pair-distance reduction: G(x) = int_0^2 W(rho) phi(x rho)/rho^8 drho
// over the chordal-distance distribution W of hemisphere pairs (unit radius).
double shell_g_full(double x, const quad::QuadratureSpec& spec);

// Dimensionless shell curve: 2 G(wa) / (pi (wa)^8), tabulated over the given
// wa grid.  Tends to -8 pi/9 as wa -> 0 and to N/(wa)^4, N ~ -27, for
// wa >> 1.  Thickness cancels in this normalization.
std::vector<std::array<double, 2>> shell_scaled_integral(
    const std::vector<double>& omega_a, const quad::QuadratureSpec& spec);

// Reduced wrench torque factor: Jhat = w^4 int_{-a}^a dy int_0^b dx
// x y phi(v)/v^8, v = w sqrt(x^2 + (a+y)^2); J_z = 2 S_A S_B w^4 Jhat.
// Uses the closed asymptotic forms for wa, wb >= 50 (11 pi wa/30) and
// wa, wb <= 1e-3 (56 (wa)^4 (wb)^2/675); quadrature in between.
quad::IntegralResult wrench_j_hat(const AllenWrench& w, double omega,
                                  const quad::QuadratureSpec& spec);

// Always evaluates the 2-D quadrature, regardless of wa.
quad::IntegralResult wrench_j_hat_numeric(const AllenWrench& w, double omega,
                                          const quad::QuadratureSpec& spec);

// Janus-ball I_AB by symmetry-reduced nested quadrature (cross-check path).
quad::IntegralResult janus_i_nested(double a, double omega,
                                    const quad::QuadratureSpec& spec);

// Janus-ball I_AB by stratified Monte Carlo (default path for wa > 0.2).
quad::IntegralResult janus_i_mc(double a, double omega,
                                const quad::QuadratureSpec& spec);

// In-plane force integrals of the dual wrench (both tags); vanish by the
// r -> -r reflection symmetry, computed numerically as a check.
std::array<quad::IntegralResult, 3> wrench_force_vector(
    const AllenWrench& w, double omega, const quad::QuadratureSpec& spec);

// I = rho_A S_A (2/3) a^3 + rho_B S_B 2 b (a^2 + b^2/3), about the central
// normal axis.
double wrench_moment_of_inertia(const AllenWrench& w, double rho_A, double rho_B);

// Point-cloud text format: "x y z weight tag" per line, tag A or B,
// '#' comments; an optional "# units nm" header rescales coordinates and
// weights from nm to natural units.
VoxelCloud load_point_cloud(const std::string& path);

// Midpoint voxelization of a needle, n points per unit length of each part.
VoxelCloud voxelize_needle(const Needle& n, int points_per_part);

}  // namespace qvac::geom
