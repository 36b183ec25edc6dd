#include "qvac/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "qvac/units.hpp"

namespace qvac::obs {

using materials::MaterialModel;
using units::pi;

bool materials_equal(const MaterialModel& a, const MaterialModel& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ca = std::get_if<materials::ConstantDielectric>(&a))
    return ca->chi == std::get<materials::ConstantDielectric>(b).chi;
  if (const auto* da = std::get_if<materials::Drude>(&a)) {
    const auto& db = std::get<materials::Drude>(b);
    return da->omega_p == db.omega_p && da->nu == db.nu;
  }
  if (const auto* ba = std::get_if<materials::BlackbodySurface>(&a))
    return ba->epsilon_reg == std::get<materials::BlackbodySurface>(b).epsilon_reg;
  const auto& ta = std::get<materials::Tabulated>(a);
  const auto& tb = std::get<materials::Tabulated>(b);
  return ta.omega == tb.omega && ta.chi == tb.chi;
}

namespace {

struct SpectralAccumulator {
  double worst_rel_inner = 0.0;
  bool all_inner_converged = true;

  void note(const quad::IntegralResult& inner) {
    if (!inner.converged) all_inner_converged = false;
    if (inner.value != 0.0)
      worst_rel_inner =
          std::max(worst_rel_inner, inner.error_estimate / std::fabs(inner.value));
  }
};

double omega_cutoff(const thermal::ThermalPair& th) {
  return 60.0 * std::max(th.T_env, th.T_body);
}

ObservableResult make_exact_zero(const std::string& note) {
  ObservableResult r;
  r.exact_zero = true;
  r.note = note;
  return r;
}

bool pair_is_inert(const geom::TwoPartBody& body, const thermal::ThermalPair& th,
                   std::string* why) {
  if (th.beta == th.beta_prime) {
    *why = "equilibrium: T = T'";
    return true;
  }
  if (materials_equal(body.material_A, body.material_B)) {
    *why = "homogeneous body: A = B";
    return true;
  }
  if (materials::is_lossless(body.material_A) &&
      materials::is_lossless(body.material_B)) {
    *why = "both susceptibilities real: X vanishes";
    return true;
  }
  return false;
}

}  // namespace

ObservableResult force_z(const geom::TwoPartBody& body, const thermal::ThermalPair& th,
                         const quad::QuadratureSpec& spec) {
  std::string why;
  if (pair_is_inert(body, th, &why)) return make_exact_zero(why);

  quad::QuadratureSpec omega_spec = spec;
  quad::QuadratureSpec inner_spec = spec;
  if (std::holds_alternative<geom::JanusBall>(body.shape)) {
    // each inner evaluation above the small-radius regime is a Monte Carlo
    // pass with few-percent statistical error
    omega_spec.rel_tol = std::max(spec.rel_tol, 1e-3);
    omega_spec.max_subdivisions = std::min(spec.max_subdivisions, 40);
    inner_spec.rel_tol = std::max(spec.rel_tol, 5e-2);
  }

  SpectralAccumulator acc;
  const auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double x = materials::x_product(body.material_A, body.material_B, w);
    if (x == 0.0) return 0.0;
    const quad::IntegralResult inner = geom::i_ab(body, w, inner_spec);
    acc.note(inner);
    return x * inner.value * thermal::occupation_diff(w, th);
  };
  const quad::IntegralResult outer =
      quad::integrate_1d(integrand, 0.0, omega_cutoff(th), omega_spec);

  ObservableResult r;
  r.value_natural = (4.0 / pi) * outer.value;
  r.value_si = r.value_natural * units::eV2_to_newton;
  const double err_nat =
      (4.0 / pi) * outer.error_estimate + acc.worst_rel_inner * std::fabs(r.value_natural);
  r.numerical_error = err_nat * units::eV2_to_newton;
  r.converged = outer.converged && acc.all_inner_converged;
  return r;
}

std::array<ObservableResult, 3> torque_second_order(const geom::TwoPartBody& body,
                                                    const thermal::ThermalPair& th,
                                                    const quad::QuadratureSpec& spec) {
  std::string why;
  if (pair_is_inert(body, th, &why))
    return {make_exact_zero(why), make_exact_zero(why), make_exact_zero(why)};

  // the flags' 3-D inner integral must be quieter than the outer tolerance,
  // or the spectral integral chases inner noise and never converges
  quad::QuadratureSpec inner_spec = spec;
  if (std::holds_alternative<geom::DualFlags>(body.shape))
    inner_spec.rel_tol = 0.1 * spec.rel_tol;

  std::array<ObservableResult, 3> out;
  for (int comp = 0; comp < 3; ++comp) {
    SpectralAccumulator acc;
    bool inner_all_zero = true;
    const auto integrand = [&](double w) {
      if (w <= 0.0) return 0.0;
      const double x = materials::x_product(body.material_A, body.material_B, w);
      if (x == 0.0) return 0.0;
      const quad::IntegralResult inner = geom::j_ab(body, w, inner_spec)[comp];
      if (inner.value != 0.0 || inner.error_estimate != 0.0) inner_all_zero = false;
      acc.note(inner);
      return x * inner.value * thermal::occupation_diff(w, th);
    };
    const quad::IntegralResult outer =
        quad::integrate_1d(integrand, 0.0, omega_cutoff(th), spec);
    ObservableResult r;
    if (inner_all_zero && outer.value == 0.0) {
      r = make_exact_zero("geometric factor vanishes by symmetry");
    } else {
      r.value_natural = outer.value / (4.0 * pi * pi * pi);
      r.value_si = r.value_natural * units::eV_to_newton_meter;
      const double err_nat = outer.error_estimate / (4.0 * pi * pi * pi) +
                             acc.worst_rel_inner * std::fabs(r.value_natural);
      r.numerical_error = err_nat * units::eV_to_newton_meter;
      r.converged = outer.converged && acc.all_inner_converged;
    }
    out[comp] = r;
  }
  return out;
}

double torque_hat_integral(const thermal::ThermalPair& th, double nu,
                           const quad::QuadratureSpec& spec) {
  const double u = th.T_body / th.T_env;
  return thermal::weighted_bose_integral(4, u, th.T_env_K, nu, spec);
}

std::array<ObservableResult, 3> torque_first_order(
    const materials::PolarizabilityTensor& alpha, const thermal::ThermalPair& th,
    const quad::QuadratureSpec& spec) {
  const auto antisym = [&](double w) -> std::array<double, 3> {
    const materials::Mat3c m = alpha.alpha(w);
    return {m[5].real() - m[7].real(),   // Re a_yz - Re a_zy
            m[6].real() - m[2].real(),   // Re a_zx - Re a_xz
            m[1].real() - m[3].real()};  // Re a_xy - Re a_yx
  };

  // Probe for a symmetric-only Re alpha on a log grid across the thermal band.
  double max_a = 0.0, max_m = 0.0;
  for (double w = 1e-3 * th.T_env; w < omega_cutoff(th); w *= 2.0) {
    const materials::Mat3c m = alpha.alpha(w);
    for (const auto& c : m) max_m = std::max(max_m, std::fabs(c.real()));
    for (double c : antisym(w)) max_a = std::max(max_a, std::fabs(c));
  }
  if (max_a <= 1e-14 * std::max(max_m, 1e-300)) {
    const ObservableResult z =
        make_exact_zero("Re alpha has no antisymmetric part: no first-order torque");
    return {z, z, z};
  }
  if (th.beta == th.beta_prime) {
    const ObservableResult z = make_exact_zero("equilibrium: T = T'");
    return {z, z, z};
  }

  std::array<ObservableResult, 3> out;
  for (int comp = 0; comp < 3; ++comp) {
    const auto integrand = [&](double w) {
      if (w <= 0.0) return 0.0;
      return w * w * w * thermal::occupation_diff(w, th) * antisym(w)[comp];
    };
    const quad::IntegralResult r =
        quad::integrate_1d(integrand, 0.0, omega_cutoff(th), spec);
    ObservableResult o;
    o.value_natural = r.value / (3.0 * pi * pi);
    o.value_si = o.value_natural * units::eV_to_newton_meter;
    o.numerical_error =
        r.error_estimate / (3.0 * pi * pi) * units::eV_to_newton_meter;
    o.converged = r.converged;
    out[comp] = o;
  }
  return out;
}

}  // namespace qvac::obs
