#include "qvac/thermal.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qvac/units.hpp"

namespace qvac::thermal {

ThermalPair ThermalPair::from_kelvin(double env_K, double body_K) {
  if (env_K <= 0.0 || body_K <= 0.0)
    throw std::domain_error("ThermalPair: temperatures must be > 0");
  ThermalPair th;
  th.T_env_K = env_K;
  th.T_body_K = body_K;
  th.T_env = units::temperature_eV(env_K);
  th.T_body = units::temperature_eV(body_K);
  th.beta = 1.0 / th.T_env;
  th.beta_prime = 1.0 / th.T_body;
  return th;
}

ThermalPair ThermalPair::from_beta(double beta, double beta_prime) {
  if (beta <= 0.0 || beta_prime <= 0.0)
    throw std::domain_error("ThermalPair: inverse temperatures must be > 0");
  ThermalPair th;
  th.beta = beta;
  th.beta_prime = beta_prime;
  th.T_env = 1.0 / beta;
  th.T_body = 1.0 / beta_prime;
  th.T_env_K = th.T_env / units::kB_eV_per_K;
  th.T_body_K = th.T_body / units::kB_eV_per_K;
  return th;
}

double bose_diff(double a, double b) {
  if (a == b) return 0.0;
  if (std::min(a, b) > 40.0) return std::exp(-a) - std::exp(-b);
  const double ea = std::expm1(a);
  const double eb = std::expm1(b);
  return (eb - ea) / (ea * eb);
}

double occupation_diff(double omega, const ThermalPair& th) {
  if (omega <= 0.0) throw std::domain_error("occupation_diff: omega must be > 0");
  return bose_diff(th.beta * omega, th.beta_prime * omega);
}

PowerResult radiated_power(const std::function<double(double)>& im_tr_alpha,
                           const ThermalPair& th, const quad::QuadratureSpec& spec) {
  const auto integrand = [&](double w) {
    return w * w * w * w * im_tr_alpha(w) * occupation_diff(w, th);
  };
  const double t_hot = std::max(th.T_env, th.T_body);

  // Locate the spectral peak on a log grid, then scan for the decay point.
  double peak = 0.0;
  for (double w = 1e-3 * t_hot; w < 60.0 * t_hot; w *= 1.3)
    peak = std::max(peak, std::fabs(integrand(w)));
  if (peak == 0.0) return {0.0, 0.0, {0.0, 0.0, 0, true}};
  const double floor = 1e-3 * spec.rel_tol * peak;
  double w_max = 4.0 * t_hot;
  while (std::fabs(integrand(w_max)) > floor && w_max < 200.0 * t_hot) w_max *= 1.5;

  const quad::IntegralResult head =
      quad::integrate_1d(integrand, 0.0, w_max, spec);
  const quad::IntegralResult tail =
      quad::integrate_1d(integrand, w_max, 2.0 * w_max, spec);

  PowerResult out;
  out.integral.value = head.value + tail.value;
  out.integral.error_estimate =
      head.error_estimate + tail.error_estimate + std::fabs(tail.value);
  out.integral.evaluations = head.evaluations + tail.evaluations;
  out.integral.converged =
      head.converged && tail.converged &&
      std::fabs(tail.value) <=
          std::max(spec.abs_tol,
                   spec.rel_tol * std::fabs(out.integral.value));
  const double coeff = 1.0 / (3.0 * units::pi * units::pi);
  out.natural = coeff * out.integral.value;
  out.watts = out.natural * units::eV_J / units::hbar_eV_s;
  return out;
}

double weighted_bose_integral(int k, double u, double T_env_K, double nu,
                              const quad::QuadratureSpec& spec) {
  if (u <= 0.0) throw std::domain_error("weighted_bose_integral: u must be > 0");
  if (nu <= 0.0) throw std::domain_error("weighted_bose_integral: nu must be > 0");
  if (u == 1.0) return 0.0;
  const double bn = units::inverse_temperature(T_env_K) * nu;
  const auto f = [&](double x) {
    if (x == 0.0) return 0.0;
    const double w = std::pow(x, k) / (x * x + 1.0);
    return w * bose_diff(bn * x, bn * x / u);
  };
  const double x_max = 60.0 * std::max(1.0, u) / bn;
  const quad::IntegralResult r = quad::integrate_1d(f, 0.0, x_max, spec);
  if (!r.converged)
    throw std::runtime_error("weighted_bose_integral: quadrature did not converge");
  return r.value;
}

double p_dimensionless(double u, double T_env_K, double nu,
                       const quad::QuadratureSpec& spec) {
  return weighted_bose_integral(3, u, T_env_K, nu, spec);
}

CoolingTimescale cooling_timescale_tc(const materials::Drude& m, double n_density,
                                      double T_env_K) {
  if (n_density <= 0.0)
    throw std::domain_error("cooling_timescale_tc: n_density must be > 0");
  const double T = units::temperature_eV(T_env_K);
  CoolingTimescale out;
  out.natural = 3.0 * units::pi * units::pi * n_density * T /
                (m.nu * m.nu * m.nu * m.omega_p * m.omega_p);
  out.seconds = units::from_natural(out.natural, units::Dimension::Time);
  return out;
}

double cooling_time(double T0_K, double T1_K, double T_env_K,
                    const std::function<double(double)>& heat_capacity,
                    const std::function<double(double, double)>& power,
                    const quad::QuadratureSpec& spec) {
  if (!(T0_K > T1_K && T1_K > T_env_K))
    throw std::domain_error("cooling_time: need T0 > T1 > T_env");
  const auto integrand = [&](double tp_K) {
    const double p = power(tp_K, T_env_K);
    if (p <= 0.0) {
      std::ostringstream msg;
      msg << "cooling_time: radiated power is " << p << " at T' = " << tp_K
          << " K; the body cannot cool through this temperature";
      throw std::runtime_error(msg.str());
    }
    return heat_capacity(tp_K) / p;
  };
  const quad::IntegralResult r = quad::integrate_1d(integrand, T1_K, T0_K, spec);
  const double t_natural = units::kB_eV_per_K * r.value;
  return units::from_natural(t_natural, units::Dimension::Time);
}

}  // namespace qvac::thermal
