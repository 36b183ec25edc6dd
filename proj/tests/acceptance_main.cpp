// End-to-end acceptance checks: one line of output per criterion, nonzero
// exit status if any of them fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qvac/dynamics.hpp"
#include "qvac/geometry.hpp"
#include "qvac/kernels.hpp"
#include "qvac/materials.hpp"
#include "qvac/mc.hpp"
#include "qvac/observables.hpp"
#include "qvac/quadrature.hpp"
#include "qvac/scenario.hpp"
#include "qvac/thermal.hpp"
#include "qvac/units.hpp"

using namespace qvac;
using units::pi;
using json = nlohmann::json;

namespace {

std::string g_detail;

void detail(const std::string& s) {
  if (!g_detail.empty()) g_detail += "; ";
  g_detail += s;
}

bool close(double value, double truth, double rel, const std::string& what) {
  const double d = std::fabs(value - truth) /
                   std::max(std::fabs(truth), 1e-300);
  if (d <= rel) return true;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s: got %.6g, want %.6g (rel %.2g > %.2g)",
                what.c_str(), value, truth, d, rel);
  detail(buf);
  return false;
}

double summary_value(const scenario::RunOutput& out, const std::string& key) {
  return json::parse(out.summary_json).at(key).get<double>();
}

scenario::RunOutput run_text(const std::string& cfg) {
  return scenario::run(scenario::parse_config(cfg));
}

// --- criterion 1: kernel asymptotics ---------------------------------------

bool criterion_kernel_asymptotics() {
  bool ok = true;
  for (double v = 1e-6; v <= 1.01e-2; v *= 10.0) {
    const double v8 = std::pow(v, 8);
    if (std::fabs(kernels::phi(v) + 4.0 / 9.0 * v8) > 0.2 * v8 * v * v) {
      detail("small-v expansion violated at v = " + std::to_string(v));
      ok = false;
    }
  }
  for (double v = 1e2; v <= 1e3; v *= 1.6) {
    const double v4 = std::pow(v, 4);
    const double lead =
        -v4 + v4 * v * std::sin(2.0 * v) + 3.0 * v4 * std::cos(2.0 * v);
    if (std::fabs(kernels::phi(v) - lead) > 10.0 * v * v * v) {
      detail("large-v envelope violated at v = " + std::to_string(v));
      ok = false;
    }
  }
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.oscillation_period = pi / 2.0;
  const auto m6 = quad::integrate_1d(
      [](double v) { return v * v * kernels::phi_over_v8(v); }, 0.0, 400.0 * pi,
      spec);
  ok &= close(m6.value, kernels::kPhiMoment6, 0.03, "sixth kernel moment");
  const auto m7 = quad::integrate_1d(
      [](double v) { return v * kernels::phi_over_v8(v); }, 0.0, 200.0, spec);
  ok &= close(m7.value, kernels::kPhiMoment7, 0.03, "seventh kernel moment");
  return ok;
}

// --- criterion 2: null configurations --------------------------------------

bool criterion_null_suite() {
  quad::QuadratureSpec spec;
  geom::TwoPartBody needle;
  needle.shape = geom::Needle{1.0, 1.0, 1.0};
  needle.material_A = materials::ConstantDielectric{1.0};
  needle.material_B = materials::Drude{9.0, 0.035};

  bool ok = true;
  const auto expect_zero = [&](const obs::ObservableResult& r, const char* what) {
    if (!r.exact_zero || r.value_si != 0.0 || r.note.empty()) {
      detail(std::string("expected an annotated exact zero: ") + what);
      ok = false;
    }
  };

  const auto eq = thermal::ThermalPair::from_kelvin(300.0, 300.0);
  const auto th = thermal::ThermalPair::from_kelvin(300.0, 600.0);
  expect_zero(obs::force_z(needle, eq, spec), "equilibrium force");

  auto homogeneous = needle;
  homogeneous.material_A = homogeneous.material_B;
  expect_zero(obs::force_z(homogeneous, th, spec), "homogeneous force");

  auto lossless = needle;
  lossless.material_B = materials::ConstantDielectric{2.0};
  expect_zero(obs::force_z(lossless, th, spec), "lossless force");

  geom::TwoPartBody wrench = needle;
  wrench.shape = geom::AllenWrench{1.0, 1.0, 0.5, 0.5};
  for (const auto& c : obs::torque_second_order(wrench, eq, spec))
    expect_zero(c, "equilibrium torque");

  materials::PolarizabilityTensor sym;
  sym.alpha = [](double) {
    materials::Mat3c m{};
    m[0] = m[4] = m[8] = 1.0;
    return m;
  };
  for (const auto& c : obs::torque_first_order(sym, th, spec))
    expect_zero(c, "reciprocal first-order torque");
  return ok;
}

// --- criterion 3: shell power law ------------------------------------------

bool criterion_shell_power_law() {
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-7;
  std::vector<double> grid;
  for (int i = 0; i < 25; ++i)
    grid.push_back(20.0 * std::pow(5.0, i / 24.0));
  const auto table = geom::shell_scaled_integral(grid, spec);
  double acc = 0.0;
  for (const auto& [x, v] : table) {
    if (v >= 0.0) {
      detail("shell curve changed sign at x = " + std::to_string(x));
      return false;
    }
    acc += std::log(-v * std::pow(x, 4));
  }
  const double N = -std::exp(acc / table.size());
  return close(N, -27.0, 0.10, "fixed-slope shell coefficient");
}

// --- criterion 4: janus scaling exponents ----------------------------------

bool criterion_janus_slopes() {
  bool ok = true;
  geom::TwoPartBody body;
  const double a = 100.0 * units::nanometer;
  body.shape = geom::JanusBall{a};
  body.material_A = materials::ConstantDielectric{1.0};
  body.material_B = materials::Drude{9.0, 0.035};

  quad::QuadratureSpec spec;
  spec.rel_tol = 0.05;
  spec.mc_samples = 4000000;

  const auto scaled = [&](double x) {
    return a * std::fabs(geom::i_ab(body, x / a, spec).value);
  };
  const double s_lo =
      std::log(scaled(0.1) / scaled(0.05)) / std::log(2.0);
  ok &= close(s_lo, 8.0, 0.025, "small-radius exponent");
  const double s_hi =
      std::log(scaled(50.0) / scaled(20.0)) / std::log(2.5);
  if (std::fabs(s_hi - 4.0) > 0.3) {
    detail("large-radius exponent " + std::to_string(s_hi) + " not within 4 +- 0.3");
    ok = false;
  }
  return ok;
}

// --- criterion 5: wrench torque asymptotes ---------------------------------

bool criterion_wrench_asymptotes() {
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  const geom::AllenWrench w{1.0, 1.0, 1.0, 1.0};
  bool ok = true;
  const double wl = 60.0;
  ok &= close(geom::wrench_j_hat_numeric(w, wl, spec).value,
              11.0 * pi * wl / 30.0, 0.05, "large-argument wrench torque");
  const double ws = 1e-3;
  ok &= close(geom::wrench_j_hat_numeric(w, ws, spec).value,
              56.0 * std::pow(ws, 6) / 675.0, 0.02, "small-argument wrench torque");
  return ok;
}

// --- criterion 6: blackbody radiated power ---------------------------------

bool criterion_stefan() {
  const auto th = thermal::ThermalPair::from_kelvin(300.0, 600.0);
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-9;
  const double S = 1.0;
  const auto power_with_eps = [&](double eps) {
    return thermal::radiated_power(
               [&](double w) { return 3.0 * S * w / (4.0 * (w * w + eps * eps)); },
               th, spec)
        .natural;
  };
  const double p = power_with_eps(1e-6);
  const double truth =
      S * pi * pi / 60.0 * (std::pow(th.T_env, 4) - std::pow(th.T_body, 4));
  bool ok = close(p, truth, 1e-3, "stefan law");
  const double p_half = power_with_eps(5e-7);
  if (std::fabs(p_half / p - 1.0) > 1e-4) {
    detail("regulator halving moved the power by more than 1e-4");
    ok = false;
  }
  return ok;
}

// --- criterion 7: headline numbers of the default scenarios ----------------

bool criterion_scenario_magnitudes() {
  const auto factor3 = [](double value, double ref, const std::string& what) {
    const double r = std::fabs(value) / std::fabs(ref);
    if (r >= 1.0 / 3.0 && r <= 3.0) return true;
    detail(what + ": " + std::to_string(value) + " not within 3x of " +
           std::to_string(ref));
    return false;
  };
  bool ok = true;

  const auto needle = run_text(R"({"scenario":"needle"})");
  ok &= factor3(summary_value(needle, "F_hat"), 1e18, "needle reduced force");
  ok &= factor3(summary_value(needle, "v_terminal_friction_m_s"), -5.0,
                "needle terminal velocity");
  ok &= factor3(summary_value(needle, "t0_years"), 15.0, "needle friction time");
  ok &= factor3(summary_value(needle, "t_c_seconds"), 1e-4, "cooling timescale");

  const auto plate =
      run_text(R"({"scenario":"plate","sweep":{"variable":"","grid":[]}})");
  ok &= factor3(summary_value(plate, "prefactor_newton"), 4e-13, "plate prefactor");

  const auto large = run_text(R"({"scenario":"wrench-large"})");
  ok &= factor3(summary_value(large, "tau0_newton_meter"), 7e-22,
                "large-wrench torque scale");

  const auto small = run_text(R"({"scenario":"wrench-small"})");
  ok &= factor3(summary_value(small, "prefactor_per_s"), 2e-7,
                "small-wrench spin prefactor");
  ok &= factor3(summary_value(small, "omega_hat_T"), 2e4, "small-wrench reduced spin");
  ok &= factor3(summary_value(small, "omega_T_per_s"), 4e-3, "small-wrench spin");

  const auto janus = run_text(R"({"scenario":"janus-ball"})");
  ok &= factor3(summary_value(janus, "v_terminal_m_s"), -1e-10,
                "janus terminal velocity");
  return ok;
}

// --- criterion 8: directions ------------------------------------------------

bool criterion_directions() {
  bool ok = true;
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-6;
  const auto th = thermal::ThermalPair::from_kelvin(300.0, 600.0);
  const auto th_cold = thermal::ThermalPair::from_kelvin(600.0, 300.0);

  geom::TwoPartBody needle;
  needle.shape = geom::Needle{1.0, 1.0, 1.0};
  needle.material_A = materials::ConstantDielectric{1.0};
  needle.material_B = materials::Drude{9.0, 0.035};
  const double f = obs::force_z(needle, th, spec).value_si;
  if (!(f < 0.0)) {
    detail("hot needle should recoil toward its metal half");
    ok = false;
  }
  auto swapped = needle;
  std::swap(swapped.material_A, swapped.material_B);
  if (!(obs::force_z(swapped, th, spec).value_si > 0.0)) {
    detail("material swap should reverse the needle force");
    ok = false;
  }
  if (!(obs::force_z(needle, th_cold, spec).value_si > 0.0)) {
    detail("temperature swap should reverse the needle force");
    ok = false;
  }

  quad::QuadratureSpec tspec;
  tspec.rel_tol = 1e-4;
  geom::TwoPartBody wrench;
  wrench.shape = geom::AllenWrench{1.0, 1.0, 0.5, 0.5};
  wrench.material_A = materials::Drude{9.0, 0.035};
  wrench.material_B = materials::ConstantDielectric{1.0};
  const double tz = obs::torque_second_order(wrench, th, tspec)[2].value_si;
  if (!(tz < 0.0)) {
    detail("hot metal wrench should spin with negative z torque");
    ok = false;
  }
  auto wrench_swapped = wrench;
  std::swap(wrench_swapped.material_A, wrench_swapped.material_B);
  const double tz2 = obs::torque_second_order(wrench_swapped, th, tspec)[2].value_si;
  if (!(tz2 > 0.0)) {
    detail("material swap should reverse the wrench torque");
    ok = false;
  }
  return ok;
}

// --- criterion 9: independent routes agree ----------------------------------

bool criterion_cross_checks() {
  bool ok = true;

  // voxelized needle vs analytic line integral
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  const geom::Needle n{50.0, 50.0, 1e-3};
  geom::TwoPartBody analytic;
  analytic.shape = n;
  analytic.material_A = materials::ConstantDielectric{1.0};
  analytic.material_B = materials::Drude{9.0, 0.035};
  auto voxel = analytic;
  voxel.shape = geom::voxelize_needle(n, 400);
  for (double w : {0.002, 0.01, 0.04}) {
    const double ia = geom::i_ab(analytic, w, spec).value;
    const double iv = geom::i_ab(voxel, w, spec).value;
    ok &= close(iv, ia, 0.01,
                "voxel cross-check at omega = " + std::to_string(w));
  }

  // janus pair integral: stratified monte carlo vs nested quadrature
  quad::QuadratureSpec nested_spec;
  nested_spec.rel_tol = 2e-3;
  quad::QuadratureSpec mc_spec;
  mc_spec.rel_tol = 0.05;
  mc_spec.mc_samples = 2000000;
  for (double w : {0.5, 1.0, 2.0}) {
    const auto mc = geom::janus_i_mc(1.0, w, mc_spec);
    const auto nq = geom::janus_i_nested(1.0, w, nested_spec);
    if (std::fabs(mc.value - nq.value) >
        3.0 * (mc.error_estimate + nq.error_estimate)) {
      detail("janus monte carlo and quadrature disagree at omega = " +
             std::to_string(w));
      ok = false;
    }
  }

  // terminal velocity: change of variables vs explicit time stepping, using
  // tabulated reduced force and power curves of the janus model
  quad::QuadratureSpec wspec;
  wspec.rel_tol = 1e-8;
  const double u0 = 2.0;
  const int ngrid = 600;
  std::vector<double> ug(ngrid), f7(ngrid), p3(ngrid);
  for (int i = 0; i < ngrid; ++i) {
    // log spacing in u - 1 down to the integration cutoff
    const double s = static_cast<double>(i) / (ngrid - 1);
    ug[i] = 1.0 + 1e-5 * (u0 - 1.0) * std::pow((u0 - 1.0) / (1e-5 * (u0 - 1.0)), s);
    f7[i] = thermal::weighted_bose_integral(7, ug[i], 300.0, 0.035, wspec);
    p3[i] = thermal::weighted_bose_integral(3, ug[i], 300.0, 0.035, wspec);
  }
  const auto interp = [&](const std::vector<double>& tab, double u) {
    auto it = std::lower_bound(ug.begin(), ug.end(), u);
    if (it == ug.begin()) return tab.front();
    if (it == ug.end()) return tab.back();
    const size_t hi = it - ug.begin(), lo = hi - 1;
    const double t = (u - ug[lo]) / (ug[hi] - ug[lo]);
    return tab[lo] + t * (tab[hi] - tab[lo]);
  };
  const double a = 100.0 * units::nanometer;
  const double pref = 1.0 * 81.0 * std::pow(0.035 * a, 7) / (27.0 * pi);
  const double mass = 1.0;  // cancels between the two routes
  const double t_c = 1.0;
  const auto force = [&](double u) { return pref * interp(f7, u); };
  const auto p = [&](double u) { return interp(p3, u); };
  const auto tv = dyn::terminal_velocity_cooling(force, p, u0, t_c, mass, wspec);
  const auto td = dyn::terminal_velocity_time_domain(force, p, u0, t_c, mass);
  ok &= close(td.v, tv.v, 0.01, "terminal-velocity route comparison");
  return ok;
}

// --- criterion 10: honest errors and determinism ----------------------------

bool criterion_honesty_and_determinism() {
  bool ok = true;
  struct Case {
    quad::Fn1 f;
    double a, b, truth;
  };
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
      {[](double x) { return std::fabs(x - 0.3); }, 0.0, 1.0, 0.29},
  };
  quad::QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  int dishonest = 0;
  for (const auto& c : cases) {
    const auto r = quad::integrate_1d(c.f, c.a, c.b, spec);
    if (std::fabs(r.value - c.truth) >
        3.0 * r.error_estimate + 1e-13 * std::fabs(c.truth) + 1e-15)
      ++dishonest;
  }
  if (dishonest > 1) {
    detail(std::to_string(dishonest) + " of 20 battery errors underestimated");
    ok = false;
  }

  // a monte-carlo-heavy scenario must be byte-identical for any thread count
  const std::string cfg =
      R"({"scenario":"janus-ball",
          "sweep":{"variable":"omega_a","grid":[5,20]},
          "quadrature":{"mc_samples":100000,"rel_tol":0.001}})";
  const int saved = quad::max_threads();
  quad::set_max_threads(1);
  const auto r1 = run_text(cfg);
  quad::set_max_threads(4);
  const auto r4 = run_text(cfg);
  quad::set_max_threads(16);
  const auto r16 = run_text(cfg);
  quad::set_max_threads(saved);
  if (r1.csv != r4.csv || r1.csv != r16.csv) {
    detail("scenario output depends on the thread count");
    ok = false;
  }
  return ok;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool()> fn;
  };
  const std::vector<Criterion> criteria = {
      {"kernel asymptotics and moments", criterion_kernel_asymptotics},
      {"null configurations are exact zeros", criterion_null_suite},
      {"shell large-radius power law", criterion_shell_power_law},
      {"janus scaling exponents", criterion_janus_slopes},
      {"wrench torque asymptotes", criterion_wrench_asymptotes},
      {"blackbody radiated power", criterion_stefan},
      {"scenario headline magnitudes", criterion_scenario_magnitudes},
      {"force and torque directions", criterion_directions},
      {"independent numerical routes agree", criterion_cross_checks},
      {"honest errors and thread determinism", criterion_honesty_and_determinism},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    g_detail.clear();
    bool pass = false;
    try {
      pass = criteria[i].fn();
    } catch (const std::exception& e) {
      detail(std::string("exception: ") + e.what());
    }
    if (pass) {
      std::printf("criterion %zu (%s): PASS\n", i + 1, criteria[i].name);
    } else {
      std::printf("criterion %zu (%s): FAIL [%s]\n", i + 1, criteria[i].name,
                  g_detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
