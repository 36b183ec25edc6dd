#pragma once

#include <functional>

#include "qvac/materials.hpp"
#include "qvac/quadrature.hpp"

namespace qvac::thermal {

// Environment (T) and body (T') temperatures with their natural-unit
// inverse temperatures.
struct ThermalPair {
  double T_env_K;
  double T_body_K;
  double T_env;       // eV
  double T_body;      // eV
  double beta;        // eV^-1, environment
  double beta_prime;  // eV^-1, body

  static ThermalPair from_kelvin(double env_K, double body_K);
  static ThermalPair from_beta(double beta, double beta_prime);
};

// n(beta w) - n(beta' w), Bose occupation difference; stable for both
// beta w >> 1 and beta w << 1.
double occupation_diff(double omega, const ThermalPair& th);

// Difference of Bose functions n(a) - n(b) for a, b > 0.
double bose_diff(double a, double b);

struct PowerResult {
  double natural = 0.0;  // eV^2
  double watts = 0.0;
  quad::IntegralResult integral;
};

// P = (1/3pi^2) int_0^inf dw w^4 Im tr alpha(w) [n(bw) - n(b'w)].
// The frequency cutoff is found by a bracketed decay scan and doubled once;
// the shift from doubling is folded into the error estimate.
PowerResult radiated_power(const std::function<double(double)>& im_tr_alpha,
                           const ThermalPair& th, const quad::QuadratureSpec& spec);

// int_0^inf dx x^k/(x^2+1) [n(beta nu x) - n(beta nu x / u)], the shared
// weight of the dimensionless cooling power (k=3) and the reduced force and
// torque curves (k = 4, 5, 7, 9 depending on the scenario).
double weighted_bose_integral(int k, double u, double T_env_K, double nu,
                              const quad::QuadratureSpec& spec);

// k=3 case: the dimensionless radiated power p(u; T).
double p_dimensionless(double u, double T_env_K, double nu,
                       const quad::QuadratureSpec& spec);

struct CoolingTimescale {
  double natural = 0.0;  // eV^-1
  double seconds = 0.0;
};

// t_c = 3 pi^2 n T / (nu^3 omega_p^2) for a weak-susceptibility Drude body.
CoolingTimescale cooling_timescale_tc(const materials::Drude& m, double n_density,
                                      double T_env_K);

// Elapsed time (seconds) to cool from T0 to T1 against environment T_env.
// heat_capacity(T'_K) is the total natural-unit heat capacity (dimensionless);
// power(T'_K, T_env_K) is the natural-unit radiated power (eV^2), positive
// when the body is hotter.  Throws if the power vanishes inside the range.
double cooling_time(double T0_K, double T1_K, double T_env_K,
                    const std::function<double(double)>& heat_capacity,
                    const std::function<double(double, double)>& power,
                    const quad::QuadratureSpec& spec);

}  // namespace qvac::thermal
