#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace qvac::quad {

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  std::int64_t mc_samples = 1000000;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  // Half-wavelength of the fastest oscillation, in the integration variable.
  // When set, the initial panelization never exceeds half a period.
  std::optional<double> oscillation_period;

  QuadratureSpec with_rel_tol(double t) const {
    QuadratureSpec s = *this;
    s.rel_tol = t;
    return s;
  }
  QuadratureSpec with_period(std::optional<double> p) const {
    QuadratureSpec s = *this;
    s.oscillation_period = p;
    return s;
  }
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using Fn1 = std::function<double(double)>;

// Adaptive Gauss-Kronrod 7-15 on [a, b]; b may be +inf (mapped via
// x = a + t/(1-t)).  A non-converged result keeps its error estimate and is
// never silently flagged converged.
IntegralResult integrate_1d(const Fn1& f, double a, double b, const QuadratureSpec& spec);

using FnN = std::function<double(const double*)>;

// Tensorized adaptive quadrature over a d-box, d <= 4.  Inner dimensions are
// integrated at a tightened tolerance; errors are combined conservatively.
IntegralResult integrate_nested(const FnN& f, const double* lo, const double* hi, int dim,
                                const QuadratureSpec& spec);

}  // namespace qvac::quad
