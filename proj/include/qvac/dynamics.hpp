#pragma once

#include <functional>
#include <vector>

#include "qvac/quadrature.hpp"
#include "qvac/thermal.hpp"

namespace qvac::dyn {

// Einstein-Hopf drag: F_f = -gamma v with
// gamma = (beta/12pi^2) int_0^inf dw w^5 Im alpha(w) / sinh^2(beta w/2),
// alpha the scalar mean polarizability.  Natural units (eV^2 per unit c).
double friction_coefficient(const std::function<double(double)>& im_alpha,
                            double T_env_K, const quad::QuadratureSpec& spec);

struct FrictionMotion {
  double v_terminal;        // units of c
  double v_terminal_m_s;
  double t0_seconds;        // m/gamma
  bool unbounded = false;   // gamma = 0: no terminal velocity exists
  // v(t) with t in seconds
  std::function<double(double)> velocity_m_s;
};

// v(t) = v_T (1 - exp(-t/t0)), v_T = F/gamma, t0 = m/gamma; all natural
// inputs.  gamma = 0 marks the motion unbounded instead of dividing by zero.
FrictionMotion velocity_trajectory_friction(double force, double mass, double gamma);

struct TerminalVelocity {
  double v;          // units of c, signed
  double v_m_s;
  double reduced;    // int_1^u0 du F/( -p) style reduced integral
  bool converged = true;
};

// Cooling-limited terminal velocity via the u-substitution
// v_T = (t_c/m) int_{u0}^{1} du F(u)/p(u); force(u) in eV^2, p(u)
// dimensionless and negative for u > 1, t_c and mass natural.
TerminalVelocity terminal_velocity_cooling(const std::function<double(double)>& force,
                                           const std::function<double(double)>& p,
                                           double u0, double t_c, double mass,
                                           const quad::QuadratureSpec& spec);

// Same quantity by explicit time stepping of du/dt = p(u)/t_c while
// accumulating the impulse; cross-check of the change of variables.
TerminalVelocity terminal_velocity_time_domain(const std::function<double(double)>& force,
                                               const std::function<double(double)>& p,
                                               double u0, double t_c, double mass);

struct TerminalAngularVelocity {
  double omega_per_s;   // magnitude, 1/s
  double omega_hat;     // int_1^{u0} du tauhat(u)/p(u), positive convention
  double prefactor_per_s;  // t_c tau0 / I in 1/s
  bool converged = true;
};

// omega_T = (t_c tau0 / I) omegahat_T; tau_hat(u) and p(u) dimensionless,
// tau0 natural (eV), inertia natural (eV^-1), t_c natural (eV^-1).
TerminalAngularVelocity terminal_angular_velocity(
    const std::function<double(double)>& tau_hat, const std::function<double(double)>& p,
    double u0, double t_c, double tau0, double inertia,
    const quad::QuadratureSpec& spec);

struct TrajectoryPoint {
  double t_seconds;
  double T_body_K;
};

// Adaptive RK4 (step halving) solution of C_V dT'/dt = -P(T', T); P in eV^2
// positive when the body is hotter, C_V dimensionless (natural).
std::vector<TrajectoryPoint> cooling_trajectory(
    double T0_K, double T_env_K, const std::function<double(double)>& heat_capacity,
    const std::function<double(double, double)>& power, double rel_tol = 1e-6);

}  // namespace qvac::dyn
