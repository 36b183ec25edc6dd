#include "qvac/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "qvac/units.hpp"

namespace qvac::dyn {

using units::pi;

double friction_coefficient(const std::function<double(double)>& im_alpha,
                            double T_env_K, const quad::QuadratureSpec& spec) {
  const double beta = units::inverse_temperature(T_env_K);
  const auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double s = std::sinh(0.5 * beta * w);
    if (!std::isfinite(s) || s == 0.0) return 0.0;
    return w * w * w * w * w * im_alpha(w) / (s * s);
  };
  // sinh^-2 decays like exp(-beta w); 80/beta leaves a tail below 1e-30.
  const quad::IntegralResult r = quad::integrate_1d(integrand, 0.0, 80.0 / beta, spec);
  return beta / (12.0 * pi * pi) * r.value;
}

FrictionMotion velocity_trajectory_friction(double force, double mass, double gamma) {
  FrictionMotion m;
  if (gamma <= 0.0) {
    m.unbounded = true;
    m.v_terminal = 0.0;
    m.v_terminal_m_s = 0.0;
    m.t0_seconds = 0.0;
    const double accel = force / mass;  // natural, per eV^-1 of time
    m.velocity_m_s = [accel](double t_s) {
      return accel * (t_s * units::second) * units::c_m_per_s;
    };
    return m;
  }
  m.v_terminal = force / gamma;
  m.v_terminal_m_s = m.v_terminal * units::c_m_per_s;
  const double t0_nat = mass / gamma;
  m.t0_seconds = t0_nat * units::hbar_eV_s;
  const double vT = m.v_terminal_m_s;
  const double t0 = m.t0_seconds;
  m.velocity_m_s = [vT, t0](double t_s) { return vT * (1.0 - std::exp(-t_s / t0)); };
  return m;
}

TerminalVelocity terminal_velocity_cooling(const std::function<double(double)>& force,
                                           const std::function<double(double)>& p,
                                           double u0, double t_c, double mass,
                                           const quad::QuadratureSpec& spec) {
  if (u0 <= 1.0) throw std::invalid_argument("terminal_velocity_cooling: u0 must exceed 1");
  // p(u) -> 0 as u -> 1; stop a hair short of the equilibrium endpoint where
  // the ratio F/p stays finite but both factors underflow.
  const double lo = 1.0 + 1e-4 * (u0 - 1.0);
  const auto integrand = [&](double u) { return force(u) / p(u); };
  const quad::IntegralResult r = quad::integrate_1d(integrand, lo, u0, spec);
  TerminalVelocity tv;
  // v_T = (t_c/m) int_{u0}^{1} du F/p: u runs downhill as the body cools.
  tv.reduced = -r.value;
  tv.v = -(t_c / mass) * r.value;
  tv.v_m_s = tv.v * units::c_m_per_s;
  tv.converged = r.converged;
  return tv;
}

TerminalVelocity terminal_velocity_time_domain(const std::function<double(double)>& force,
                                               const std::function<double(double)>& p,
                                               double u0, double t_c, double mass) {
  if (u0 <= 1.0)
    throw std::invalid_argument("terminal_velocity_time_domain: u0 must exceed 1");
  // du/dt = p(u)/t_c with p < 0 for u > 1; RK4 with steps shrinking as the
  // body approaches equilibrium, impulse accumulated with the same stages.
  const double u_stop = 1.0 + 1e-4 * (u0 - 1.0);
  double u = u0;
  double v = 0.0;  // units of c
  const auto du_dt = [&](double uu) { return p(uu) / t_c; };
  int guard = 0;
  while (u > u_stop && guard++ < 2000000) {
    const double rate = du_dt(u);
    if (rate >= 0.0) break;
    // aim for a 0.1% relative step in (u - 1)
    double dt = 1e-3 * (u - 1.0) / (-rate);
    if (u + rate * dt < u_stop) dt = (u_stop - u) / rate;
    const double k1u = du_dt(u);
    const double k1v = force(u) / mass;
    const double u2 = u + 0.5 * dt * k1u;
    const double k2u = du_dt(u2);
    const double k2v = force(u2) / mass;
    const double u3 = u + 0.5 * dt * k2u;
    const double k3u = du_dt(u3);
    const double k3v = force(u3) / mass;
    const double u4 = u + dt * k3u;
    const double k4u = du_dt(u4);
    const double k4v = force(u4) / mass;
    u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  TerminalVelocity tv;
  tv.v = v;
  tv.v_m_s = v * units::c_m_per_s;
  tv.reduced = v * mass / t_c;
  tv.converged = u <= u_stop * (1.0 + 1e-9);
  return tv;
}

TerminalAngularVelocity terminal_angular_velocity(
    const std::function<double(double)>& tau_hat, const std::function<double(double)>& p,
    double u0, double t_c, double tau0, double inertia,
    const quad::QuadratureSpec& spec) {
  if (u0 <= 1.0) throw std::invalid_argument("terminal_angular_velocity: u0 must exceed 1");
  const double lo = 1.0 + 1e-4 * (u0 - 1.0);
  // tau_hat and p share sign near equilibrium, so the ratio is positive;
  // orient the integral from 1 to u0.
  const auto integrand = [&](double u) { return tau_hat(u) / p(u); };
  const quad::IntegralResult r = quad::integrate_1d(integrand, lo, u0, spec);
  TerminalAngularVelocity out;
  out.omega_hat = r.value;
  const double pref_nat = t_c * tau0 / inertia;  // dimensionless per eV^-1... -> eV
  out.prefactor_per_s = pref_nat / units::hbar_eV_s;
  out.omega_per_s = out.prefactor_per_s * out.omega_hat;
  out.converged = r.converged;
  return out;
}

std::vector<TrajectoryPoint> cooling_trajectory(
    double T0_K, double T_env_K, const std::function<double(double)>& heat_capacity,
    const std::function<double(double, double)>& power, double rel_tol) {
  if (T0_K == T_env_K) return {{0.0, T0_K}};
  if (T0_K < T_env_K)
    throw std::invalid_argument("cooling_trajectory: body must start hotter than the environment");
  std::vector<TrajectoryPoint> out;
  double T = T0_K;       // Kelvin
  double t_nat = 0.0;    // eV^-1
  const double T_stop = T_env_K + 1e-3 * (T0_K - T_env_K);
  out.push_back({0.0, T});

  // dT'/dt = -P/C_V in natural units; convert Kelvin <-> eV at the boundary.
  const auto dT_dt = [&](double TK) {
    const double P = power(TK, T_env_K);
    const double C = heat_capacity(TK);
    if (C <= 0.0) throw std::invalid_argument("cooling_trajectory: nonpositive heat capacity");
    return -(P / C) / units::kB_eV_per_K;  // K per eV^-1
  };
  const auto rk4 = [&](double TK, double dt) {
    const double k1 = dT_dt(TK);
    const double k2 = dT_dt(TK + 0.5 * dt * k1);
    const double k3 = dT_dt(TK + 0.5 * dt * k2);
    const double k4 = dT_dt(TK + dt * k3);
    return TK + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  double dt = 1e-3 * (T - T_env_K) / (-dT_dt(T));
  int guard = 0;
  while (T > T_stop && guard++ < 200000) {
    // step halving: accept when one full step and two half steps agree
    double T_full, T_half;
    for (;;) {
      T_full = rk4(T, dt);
      T_half = rk4(rk4(T, 0.5 * dt), 0.5 * dt);
      const double diff = std::fabs(T_full - T_half);
      if (diff <= rel_tol * (T - T_env_K) || dt <= 1e-12 * t_nat + 1e-30) break;
      dt *= 0.5;
    }
    T = T_half;
    t_nat += dt;
    out.push_back({t_nat * units::hbar_eV_s, T});
    const double rate = dT_dt(T);
    if (rate >= 0.0) break;
    const double dt_target = 0.05 * (T - T_env_K) / (-rate);
    dt = std::min(2.0 * dt, dt_target);
  }
  return out;
}

}  // namespace qvac::dyn
