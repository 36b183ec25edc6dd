#include <doctest.h>

#include <cmath>
#include <vector>

#include "qvac/mc.hpp"
#include "qvac/quadrature.hpp"
#include "qvac/units.hpp"

using namespace qvac;
using units::pi;

TEST_CASE("bose integral on the half line") {
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  const auto r = quad::integrate_1d(
      [](double x) { return x <= 0.0 ? 0.0 : x * x * x / std::expm1(x); }, 0.0,
      quad::kInf, spec);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::pow(pi, 4) / 15.0).epsilon(1e-10));
}

TEST_CASE("degenerate intervals and bad bounds") {
  quad::QuadratureSpec spec;
  const auto z = quad::integrate_1d([](double) { return 1.0; }, 2.0, 2.0, spec);
  CHECK(z.value == 0.0);
  CHECK(z.converged);
  const auto zero = quad::integrate_1d([](double) { return 0.0; }, 0.0, 1.0, spec);
  CHECK(zero.value == 0.0);
  CHECK(zero.converged);
  CHECK_THROWS_AS(
      quad::integrate_1d([](double) { return 1.0; }, std::nan(""), 1.0, spec),
      std::invalid_argument);
}

TEST_CASE("oscillatory integrand with a period hint") {
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.oscillation_period = pi / 2.0;  // half wavelength of sin 2v
  const auto r =
      quad::integrate_1d([](double v) { return std::sin(2.0 * v); }, 0.0, 100.0, spec);
  CHECK(r.converged);
  CHECK(r.value ==
        doctest::Approx((1.0 - std::cos(200.0)) / 2.0).epsilon(1e-9));
}

TEST_CASE("nested quadrature") {
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  {
    const double lo[2] = {0.0, 0.0}, hi[2] = {1.0, 1.0};
    const auto r = quad::integrate_nested(
        [](const double* p) { return p[0] * p[1]; }, lo, hi, 2, spec);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-9));
  }
  {
    const double lo[3] = {0.0, 0.0, 0.0}, hi[3] = {1.0, 1.0, 1.0};
    const auto r = quad::integrate_nested(
        [](const double* p) {
          return (p[0] + 1.0) * (p[1] + 1.0) * (p[2] + 1.0);
        },
        lo, hi, 3, spec);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::pow(1.5, 3)).epsilon(1e-8));
  }
  const double lo1[1] = {0.0}, hi1[1] = {1.0};
  CHECK_THROWS_AS(quad::integrate_nested([](const double*) { return 1.0; },
                                         lo1, hi1, 0, spec),
                  std::invalid_argument);
  CHECK_THROWS_AS(quad::integrate_nested([](const double*) { return 1.0; },
                                         lo1, hi1, 5, spec),
                  std::invalid_argument);
}

namespace {

struct Case {
  quad::Fn1 f;
  double a, b, truth;
};

}  // namespace

TEST_CASE("error estimates are honest across an analytic battery") {
  const double sqrt_pi = std::sqrt(pi);
  std::vector<Case> cases = {
      {[](double) { return 1.0; }, 0.0, 2.0, 2.0},
      {[](double x) { return x; }, 0.0, 2.0, 2.0},
      {[](double x) { return x * x; }, 0.0, 2.0, 8.0 / 3.0},
      {[](double x) { return x * x * x; }, 0.0, 2.0, 4.0},
      {[](double x) { return std::pow(x, 4); }, 0.0, 2.0, 32.0 / 5.0},
      {[](double x) { return std::pow(x, 5); }, 0.0, 2.0, 32.0 / 3.0},
      {[](double x) { return std::exp(x); }, 0.0, 1.0, std::exp(1.0) - 1.0},
      {[](double x) { return std::sin(x); }, 0.0, pi, 2.0},
      {[](double x) { return std::cos(10.0 * x); }, 0.0, 1.0, std::sin(10.0) / 10.0},
      {[](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, pi / 4.0},
      {[](double x) { return std::exp(-x); }, 0.0, quad::kInf, 1.0},
      {[](double x) { return std::exp(-x * x); }, 0.0, quad::kInf, sqrt_pi / 2.0},
      {[](double x) { return x * x * x * std::exp(-x); }, 0.0, quad::kInf, 6.0},
      {[](double x) { return std::sqrt(x); }, 0.0, 1.0, 2.0 / 3.0},
      {[](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0, 1.0, 2.0},
      {[](double x) { return x > 0.0 ? std::log(x) : 0.0; }, 0.0, 1.0, -1.0},
      {[](double x) { return x * std::sin(x); }, 0.0, 10.0,
       std::sin(10.0) - 10.0 * std::cos(10.0)},
      {[](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0,
       2.0 / 5.0 * std::atan(5.0)},
      {[](double x) { return std::exp(-x) * std::sin(5.0 * x); }, 0.0, quad::kInf,
       5.0 / 26.0},
      {[](double x) { return std::fabs(x - 0.3); }, 0.0, 1.0,
       (0.09 + 0.49) / 2.0},
  };

  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  int dishonest = 0;
  for (const auto& c : cases) {
    const auto r = quad::integrate_1d(c.f, c.a, c.b, spec);
    const double bound = 3.0 * r.error_estimate + 1e-13 * std::fabs(c.truth) + 1e-15;
    if (std::fabs(r.value - c.truth) > bound) ++dishonest;
  }
  CHECK(dishonest <= 1);
}

TEST_CASE("tightening the tolerance never inflates the error estimate") {
  const quad::Fn1 f = [](double x) { return std::sin(20.0 * x) / (1.0 + x); };
  quad::QuadratureSpec loose, tight;
  loose.rel_tol = 1e-3;
  tight.rel_tol = 1e-10;
  const auto rl = quad::integrate_1d(f, 0.0, 5.0, loose);
  const auto rt = quad::integrate_1d(f, 0.0, 5.0, tight);
  CHECK(rt.error_estimate <= rl.error_estimate * (1.0 + 1e-12));
  CHECK(rt.converged);
}

TEST_CASE("quadrature is bit deterministic") {
  const quad::Fn1 f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  quad::QuadratureSpec spec;
  const auto r1 = quad::integrate_1d(f, 0.0, 20.0, spec);
  const auto r2 = quad::integrate_1d(f, 0.0, 20.0, spec);
  CHECK(r1.value == r2.value);
  CHECK(r1.error_estimate == r2.error_estimate);
}

TEST_CASE("monte carlo constant integrand is exact") {
  quad::BoxPairSampler s({0, 0, 0}, {1, 2, 1}, {0, 0, -1}, {1, 1, 0});
  quad::QuadratureSpec spec;
  spec.mc_samples = 20000;
  spec.rel_tol = 1e-6;
  const auto r = quad::integrate_mc([](const double*) { return 3.5; }, s, spec);
  CHECK(r.value == doctest::Approx(3.5 * 2.0 * 1.0).epsilon(1e-12));
  CHECK(r.converged);
}

TEST_CASE("monte carlo error bars cover a 6-d polynomial") {
  quad::BoxPairSampler s({0, 0, 0}, {1, 1, 1}, {0, 0, 0}, {1, 1, 1});
  const quad::FnN f = [](const double* p) {
    double v = 1.0;
    for (int k = 0; k < 6; ++k) v *= p[k] + 0.5;
    return v;
  };
  quad::QuadratureSpec spec;
  spec.mc_samples = 20000;
  spec.rel_tol = 1.0;  // statistical check, not a convergence contract
  int covered = 0;
  for (int seed = 0; seed < 100; ++seed) {
    spec.seed = 1000 + seed;
    const auto r = quad::integrate_mc(f, s, spec);
    if (std::fabs(r.value - 1.0) <= 3.0 * r.error_estimate) ++covered;
  }
  CHECK(covered >= 95);
}

TEST_CASE("monte carlo antisymmetric integrand averages to zero") {
  quad::BoxPairSampler s({-1, 0, 0}, {1, 1, 1}, {0, 0, 0}, {1, 1, 1});
  const quad::FnN f = [](const double* p) { return p[0] * (1.0 + p[3]); };
  quad::QuadratureSpec spec;
  spec.mc_samples = 100000;
  spec.rel_tol = 1.0;
  const auto r = quad::integrate_mc(f, s, spec);
  CHECK(std::fabs(r.value) <= 4.0 * r.error_estimate + 1e-12);
}

TEST_CASE("monte carlo input validation") {
  quad::BoxPairSampler s({0, 0, 0}, {1, 1, 1}, {0, 0, 0}, {1, 1, 1});
  quad::QuadratureSpec spec;
  spec.mc_samples = 100;
  CHECK_THROWS_AS(quad::integrate_mc([](const double*) { return 1.0; }, s, spec),
                  std::invalid_argument);
  quad::BoxPairSampler flat({0, 0, 0}, {0, 1, 1}, {0, 0, 0}, {1, 1, 1});
  spec.mc_samples = 20000;
  CHECK_THROWS_AS(quad::integrate_mc([](const double*) { return 1.0; }, flat, spec),
                  std::invalid_argument);
}

TEST_CASE("monte carlo results are identical across thread counts") {
  quad::BoxPairSampler s({0, 0, 0}, {1, 1, 1}, {0, 0, 0}, {1, 1, 1});
  const quad::FnN f = [](const double* p) {
    return std::sin(p[0] + 2.0 * p[4]) * std::exp(p[2] - p[5]);
  };
  quad::QuadratureSpec spec;
  spec.mc_samples = 50000;
  spec.rel_tol = 1.0;
  const int saved = quad::max_threads();
  quad::set_max_threads(1);
  const auto r1 = quad::integrate_mc(f, s, spec);
  quad::set_max_threads(16);
  const auto r16 = quad::integrate_mc(f, s, spec);
  quad::set_max_threads(saved);
  CHECK(r1.value == r16.value);
  CHECK(r1.error_estimate == r16.error_estimate);
}
