#include "qvac/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qvac/dynamics.hpp"
#include "qvac/geometry.hpp"
#include "qvac/kernels.hpp"
#include "qvac/materials.hpp"
#include "qvac/observables.hpp"
#include "qvac/thermal.hpp"
#include "qvac/units.hpp"

namespace qvac::scenario {

using json = nlohmann::ordered_json;
using units::pi;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Figure-normalization constants baked into the reduced curves.
constexpr double kBeta0 = 40.0;           // eV^-1, reference inverse temperature
constexpr double kA0_cm = 1.0;            // reference needle half-length
constexpr double kShellN = -27.0;         // large-wa shell power-law coefficient

struct ScenarioDef {
  std::map<std::string, double> geometry;
  std::map<std::string, double> materials;
  SweepSpec sweep;
  std::vector<std::string> sweep_variables;  // allowed values of sweep.variable
  double default_rel_tol = 1e-8;
};

std::vector<double> default_u_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(1.0 + 0.1 * i);
  return g;
}

const std::map<std::string, ScenarioDef>& scenario_defs() {
  static const std::map<std::string, ScenarioDef> defs = [] {
    std::map<std::string, ScenarioDef> d;
    const std::map<std::string, double> gold = {
        {"omega_p_eV", 9.0},  {"nu_eV", 0.035},           {"chi_A", 1.0},
        {"chi_B", 1.0},       {"n_density_per_m3", 5.901e28}};
    auto with = [](std::map<std::string, double> m,
                   std::map<std::string, double> extra) {
      m.insert(extra.begin(), extra.end());
      return m;
    };
    d["needle"] = {{{"a_nm", 1e7}, {"b_nm", 1e7}, {"r_nm", 10.0}},
                   with(gold, {{"rho_A_kg_m3", 2200.0}, {"rho_B_kg_m3", 19300.0}}),
                   {"u", default_u_grid()},
                   {"u", "a_nm"}};
    d["shell"] = {{{"a_nm", 1e7}, {"t_nm", 43.85}},
                  gold,
                  {"u", default_u_grid()},
                  {"u", "omega_a"}};
    d["janus-ball"] = {{{"a_nm", 100.0}},
                       with(gold, {{"rho_A_kg_m3", 2200.0}, {"rho_B_kg_m3", 19300.0}}),
                       {"u", default_u_grid()},
                       {"u", "omega_a"}};
    d["plate"] = {{{"S_cm2", 1.0}, {"t_A_nm", 10.0}, {"t_B_nm", 10.0}},
                  {{"omega_p_eV", 9.0},
                   {"nu_eV", 0.0184},
                   {"epsilon_reg_eV", 1e-6}},
                  {"u", default_u_grid()},
                  {"u"},
                  1e-6};
    d["wrench-large"] = {{{"a_nm", 1e7}, {"b_nm", 1e7}, {"r_nm", 50.0}},
                         with(gold, {{"rho_A_kg_m3", 19300.0}, {"rho_B_kg_m3", 2200.0}}),
                         {"u", default_u_grid()},
                         {"u"}};
    d["wrench-small"] = {{{"a_nm", 1000.0}, {"b_nm", 1000.0}, {"r_nm", 50.0}},
                         with(gold, {{"rho_A_kg_m3", 19300.0}, {"rho_B_kg_m3", 2200.0}}),
                         {"u", default_u_grid()},
                         {"u"}};
    d["dual-flags"] = {{{"a_nm", 1000.0},
                        {"b_nm", 1000.0},
                        {"h_nm", 1000.0},
                        {"t_nm", 50.0},
                        {"r_nm", 50.0}},
                       gold,
                       {"", {}},
                       {},
                       1e-3};
    d["voxel"] = {{{"a_nm", 1e4}, {"b_nm", 1e4}, {"r_nm", 10.0}, {"points_per_part", 200.0}},
                  with(gold, {{"rho_A_kg_m3", 2200.0}, {"rho_B_kg_m3", 19300.0}}),
                  {"", {}},
                  {},
                  1e-5};
    d["first-order-torque"] = {{},
                               {{"alpha_scale", 1.0}},
                               {"u", default_u_grid()},
                               {"u"}};
    return d;
  }();
  return defs;
}

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const auto& a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw std::runtime_error("config: unknown key \"" + key + "\" in " + where);
  }
}

double positive_number(const json& v, const std::string& name) {
  if (!v.is_number())
    throw std::runtime_error("config: " + name + " must be a number");
  const double x = v.get<double>();
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::runtime_error("config: " + name + " must be positive and finite");
  return x;
}

// ---- shared physics helpers ------------------------------------------------

struct Params {
  double T = 0.0, u0 = 0.0;             // environment temperature (eV), T'/T
  double wp = 0.0, nu = 0.0;            // Drude parameters (eV)
  double chi_A = 1.0, chi_B = 1.0;
  std::map<std::string, double> geo;    // geometry in natural units
  std::map<std::string, double> mat;    // raw material map (input units)
};

Params make_params(const Config& cfg) {
  Params p;
  p.T = units::temperature_eV(cfg.T_env_K);
  p.u0 = cfg.T_body_K / cfg.T_env_K;
  p.mat = cfg.materials;
  auto get = [&](const char* k, double fallback) {
    auto it = cfg.materials.find(k);
    return it == cfg.materials.end() ? fallback : it->second;
  };
  p.wp = get("omega_p_eV", 9.0);
  p.nu = get("nu_eV", 0.035);
  p.chi_A = get("chi_A", 1.0);
  p.chi_B = get("chi_B", 1.0);
  for (const auto& [k, v] : cfg.geometry) {
    if (k.size() > 3 && k.substr(k.size() - 3) == "_nm")
      p.geo[k.substr(0, k.size() - 3)] = v * units::nanometer;
    else
      p.geo[k] = v;
  }
  return p;
}

double wgt(int k, double u, const Config& cfg, double nu) {
  return thermal::weighted_bose_integral(k, u, cfg.T_env_K, nu, cfg.quad);
}

double rho_natural(double kg_m3) {
  return kg_m3 * units::kilogram / (units::meter * units::meter * units::meter);
}

double n_natural(double per_m3) {
  return per_m3 / (units::meter * units::meter * units::meter);
}

// ---- output assembly -------------------------------------------------------

struct Builder {
  const Config& cfg;
  json summary = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;
  bool converged = true;

  explicit Builder(const Config& c) : cfg(c) {
    summary["version"] = kVersion;
    summary["scenario"] = c.scenario;
  }

  void scalar(const std::string& name, double v) { summary[name] = v; }
  void note(const std::string& n) { notes.push_back(n); }
  void row(std::vector<double> r) { rows.push_back(std::move(r)); }

  RunOutput finish() {
    RunOutput out;
    out.basename = cfg.basename;
    out.converged = converged;
    out.notes = notes;

    std::ostringstream csv;
    csv << "# " << kVersion << "\n";
    csv << "# scenario = " << cfg.scenario << "\n";
    csv << "# T_env_K = " << fmt17(cfg.T_env_K) << "\n";
    csv << "# T_body_K = " << fmt17(cfg.T_body_K) << "\n";
    for (const auto& [k, v] : cfg.geometry)
      csv << "# geometry." << k << " = " << fmt17(v) << "\n";
    for (const auto& [k, v] : cfg.materials)
      csv << "# materials." << k << " = " << fmt17(v) << "\n";
    if (!cfg.cloud_path.empty()) csv << "# cloud_path = " << cfg.cloud_path << "\n";
    csv << "# quadrature.rel_tol = " << fmt17(cfg.quad.rel_tol) << "\n";
    csv << "# quadrature.abs_tol = " << fmt17(cfg.quad.abs_tol) << "\n";
    csv << "# quadrature.max_subdivisions = " << cfg.quad.max_subdivisions << "\n";
    csv << "# quadrature.mc_samples = " << cfg.quad.mc_samples << "\n";
    csv << "# quadrature.seed = " << cfg.quad.seed << "\n";
    if (!cfg.sweep.variable.empty()) {
      csv << "# sweep.variable = " << cfg.sweep.variable << "\n";
      csv << "# sweep.points = " << cfg.sweep.grid.size() << "\n";
    }
    for (const auto& n : notes) csv << "# note: " << n << "\n";
    csv << "# columns:";
    for (size_t i = 0; i < columns.size(); ++i)
      csv << (i ? "," : " ") << columns[i];
    csv << "\n";
    for (const auto& r : rows) {
      for (size_t i = 0; i < r.size(); ++i) csv << (i ? "," : "") << fmt17(r[i]);
      csv << "\n";
    }
    out.csv = csv.str();

    summary["converged"] = converged;
    summary["notes"] = notes;
    out.summary_json = summary.dump(2) + "\n";

    if (rows.size() >= 2 && columns.size() >= 2) {
      std::ostringstream gp;
      gp << "set datafile separator ','\n";
      gp << "set xlabel '" << columns[0] << "'\n";
      gp << "set ylabel '" << columns[1] << "'\n";
      gp << "plot '" << cfg.basename << ".csv' using 1:2 with linespoints title '"
         << cfg.scenario << "'\n";
      out.plot_script = gp.str();
    }
    return out;
  }
};

// ---- scenarios -------------------------------------------------------------

void run_needle(const Config& cfg, Builder& b) {
  const Params p = make_params(cfg);
  const double a = p.geo.at("a"), bb = p.geo.at("b"), r = p.geo.at("r");
  const double S = pi * r * r;
  const double a0 = kA0_cm * 1e7 * units::nanometer;
  const double pref =
      S * S * p.wp * p.wp * p.nu * p.chi_A / (120.0 * pi * pi * pi) * kBeta0 *
      kBeta0 / (a0 * a0 * a0 * a0 * a0);
  b.note("F_hat normalized by the saturated-needle prefactor with beta_0 = 40/eV, a_0 = 1 cm");

  const auto force_saturated = [&](double u) {
    // saturated limit a, b >> thermal wavelength: the overlap weight
    // linearizes and the kernel moment -11pi/30 factors out
    return p.chi_A * p.wp * p.wp * S * S * p.nu * p.nu * p.nu * p.nu *
           (11.0 * pi / 30.0) * wgt(4, u, cfg, p.nu) / (4.0 * pi * pi * pi);
  };

  const double F = force_saturated(p.u0);
  b.scalar("F_newton", F * units::eV2_to_newton);
  b.scalar("F_hat", -F / pref);
  b.scalar("prefactor_newton", pref * units::eV2_to_newton);

  // Einstein-Hopf friction against the environment; only the Drude half
  // dissipates.
  const double V_B = S * bb;
  const auto im_alpha = [&](double w) {
    return V_B * p.wp * p.wp * p.nu / (w * (w * w + p.nu * p.nu));
  };
  const double gamma = dyn::friction_coefficient(im_alpha, cfg.T_env_K, cfg.quad);
  const double gamma_si = gamma * units::eV2_to_newton / units::c_m_per_s;
  b.scalar("gamma_N_s_per_m", gamma_si);
  const double rho_A = rho_natural(p.mat.at("rho_A_kg_m3"));
  const double rho_B = rho_natural(p.mat.at("rho_B_kg_m3"));
  const double mass = S * (rho_A * a + rho_B * bb);
  const auto motion = dyn::velocity_trajectory_friction(F, mass, gamma);
  b.scalar("v_terminal_friction_m_s", motion.v_terminal_m_s);
  b.scalar("t0_years", motion.t0_seconds / 3.1557e7);
  const auto tc = thermal::cooling_timescale_tc(
      {p.wp, p.nu}, n_natural(p.mat.at("n_density_per_m3")), cfg.T_env_K);
  b.scalar("t_c_seconds", tc.seconds);
  b.scalar("ratio_t0_over_tc", motion.t0_seconds / tc.seconds);
  b.note("friction and cooling channels treated independently; see ratio_t0_over_tc");

  if (cfg.sweep.variable == "u") {
    b.columns = {"u", "F_hat", "F_newton", "error_newton"};
    for (double u : cfg.sweep.grid) {
      const double Fu = force_saturated(u);
      b.row({u, -Fu / pref, Fu * units::eV2_to_newton,
             cfg.quad.rel_tol * std::fabs(Fu) * units::eV2_to_newton});
    }
  } else if (cfg.sweep.variable == "a_nm") {
    b.columns = {"a_nm", "F_hat", "F_newton", "error_newton"};
    const thermal::ThermalPair th =
        thermal::ThermalPair::from_kelvin(cfg.T_env_K, cfg.T_body_K);
    for (double a_nm : cfg.sweep.grid) {
      geom::TwoPartBody body;
      body.shape = geom::Needle{a_nm * units::nanometer, a_nm * units::nanometer, S};
      body.material_A = materials::ConstantDielectric{p.chi_A};
      body.material_B = materials::Drude{p.wp, p.nu};
      const obs::ObservableResult f = obs::force_z(body, th, cfg.quad);
      if (!f.converged) b.converged = false;
      b.row({a_nm, -f.value_natural / pref, f.value_si, f.numerical_error});
    }
  }
}

void run_shell(const Config& cfg, Builder& b) {
  const Params p = make_params(cfg);
  const double a = p.geo.at("a"), t = p.geo.at("t");
  const double pref = -p.chi_A * p.wp * p.wp * kShellN * t * t * a * p.nu *
                      p.nu * p.nu / (8.0 * pi * pi);
  b.note("prefactor uses the fitted large-wa power law N = -27; F_hat is the "
         "x^3/(x^2+1) Bose weight");
  b.scalar("prefactor_newton", pref * units::eV2_to_newton);
  const double fhat = wgt(3, p.u0, cfg, p.nu);
  b.scalar("F_hat", fhat);
  b.scalar("F_newton", pref * fhat * units::eV2_to_newton);

  if (cfg.sweep.variable == "u") {
    b.columns = {"u", "F_hat", "F_newton", "error_newton"};
    for (double u : cfg.sweep.grid) {
      const double w3 = wgt(3, u, cfg, p.nu);
      b.row({u, w3, pref * w3 * units::eV2_to_newton,
             cfg.quad.rel_tol * std::fabs(pref * w3) * units::eV2_to_newton});
    }
  } else if (cfg.sweep.variable == "omega_a") {
    b.columns = {"omega_a", "scaled_integral", "error"};
    const auto table = geom::shell_scaled_integral(cfg.sweep.grid, cfg.quad);
    for (const auto& [x, v] : table) b.row({x, v, cfg.quad.rel_tol * std::fabs(v)});
  }
}

void run_janus(const Config& cfg, Builder& b) {
  const Params p = make_params(cfg);
  const double a = p.geo.at("a");
  const double nua = p.nu * a;
  const double pref =
      p.chi_A * p.wp * p.wp * std::pow(nua, 7) / (27.0 * pi);
  b.scalar("prefactor_newton", pref * units::eV2_to_newton);
  const double fhat = wgt(7, p.u0, cfg, p.nu);
  b.scalar("F_hat", fhat);
  b.scalar("F_newton", pref * fhat * units::eV2_to_newton);

  const double mass =
      (2.0 / 3.0) * pi * a * a * a *
      (rho_natural(p.mat.at("rho_A_kg_m3")) + rho_natural(p.mat.at("rho_B_kg_m3")));
  const auto tc = thermal::cooling_timescale_tc(
      {p.wp, p.nu}, n_natural(p.mat.at("n_density_per_m3")), cfg.T_env_K);
  b.scalar("t_c_seconds", tc.seconds);
  const auto vt = dyn::terminal_velocity_cooling(
      [&](double u) { return pref * wgt(7, u, cfg, p.nu); },
      [&](double u) { return wgt(3, u, cfg, p.nu); }, p.u0, tc.natural, mass,
      cfg.quad);
  if (!vt.converged) b.converged = false;
  b.scalar("v_terminal_m_s", vt.v_m_s);

  if (cfg.sweep.variable == "u") {
    b.columns = {"u", "F_hat", "F_newton", "error_newton"};
    for (double u : cfg.sweep.grid) {
      const double w7 = wgt(7, u, cfg, p.nu);
      b.row({u, w7, pref * w7 * units::eV2_to_newton,
             cfg.quad.rel_tol * std::fabs(pref * w7) * units::eV2_to_newton});
    }
  } else if (cfg.sweep.variable == "omega_a") {
    b.columns = {"omega_a", "scaled_integral", "error"};
    geom::TwoPartBody body;
    body.shape = geom::JanusBall{a};
    body.material_A = materials::ConstantDielectric{p.chi_A};
    body.material_B = materials::Drude{p.wp, p.nu};
    // Monte Carlo points carry few-percent statistical errors at the default
    // sample budget; hold them to that, not to the deterministic tolerance.
    quad::QuadratureSpec mc_spec = cfg.quad;
    mc_spec.rel_tol = std::max(cfg.quad.rel_tol, 0.05);
    for (double x : cfg.sweep.grid) {
      const quad::IntegralResult i = geom::i_ab(body, x / a, mc_spec);
      if (!i.converged) b.converged = false;
      b.row({x, a * std::fabs(i.value), a * i.error_estimate});
    }
  }
}

void run_plate(const Config& cfg, Builder& b) {
  const Params p = make_params(cfg);
  const double S = cfg.geometry.at("S_cm2") * 1e14 * units::nanometer * units::nanometer;
  const double tA = p.geo.at("t_A"), tB = p.geo.at("t_B");
  const double eps = p.mat.at("epsilon_reg_eV");
  const double pref =
      S * tB * (tA + tB) * p.wp * p.wp * std::pow(p.nu, 4) / (24.0 * pi * pi);
  b.scalar("prefactor_newton", pref * units::eV2_to_newton);

  geom::TwoPartBody body;
  body.shape = geom::PlanarSlab{S, tA, tB};
  body.material_A = materials::BlackbodySurface{eps};
  body.material_B = materials::Drude{p.wp, p.nu};

  const auto fhat_numeric = [&](double T_body_K) {
    const thermal::ThermalPair th =
        thermal::ThermalPair::from_kelvin(cfg.T_env_K, T_body_K);
    return obs::force_z(body, th, cfg.quad);
  };
  const obs::ObservableResult f0 = fhat_numeric(cfg.T_body_K);
  if (!f0.converged && !f0.exact_zero) b.converged = false;
  b.scalar("F_newton", f0.value_si);
  b.scalar("F_hat", f0.value_natural / pref);
  b.scalar("F_hat_thin_limit", wgt(5, p.u0, cfg, p.nu));
  b.note("F_hat_thin_limit drops the finite-thickness tail correction");

  if (cfg.sweep.variable == "u") {
    b.columns = {"u", "F_hat", "F_newton", "error_newton"};
    for (double u : cfg.sweep.grid) {
      const obs::ObservableResult f = fhat_numeric(u * cfg.T_env_K);
      if (!f.converged && !f.exact_zero) b.converged = false;
      b.row({u, f.value_natural / pref, f.value_si, f.numerical_error});
    }
  }
}

void run_wrench(const Config& cfg, Builder& b, bool large) {
  const Params p = make_params(cfg);
  const double a = p.geo.at("a"), bb = p.geo.at("b"), r = p.geo.at("r");
  const double S = pi * r * r;
  const int k = large ? 4 : 9;
  double tau0;
  if (large) {
    tau0 = 11.0 / (60.0 * pi * pi) * S * S * a * std::pow(p.nu, 4) * p.wp *
           p.wp * p.chi_B;
  } else {
    tau0 = 28.0 / (675.0 * pi * pi * pi) * p.chi_B * std::pow(p.nu, 9) * p.wp *
           p.wp * S * S * std::pow(a, 4) * bb * bb;
  }
  b.scalar("tau0_newton_meter", tau0 * units::eV_to_newton_meter);
  const double that = wgt(k, p.u0, cfg, p.nu);
  b.scalar("tau_hat", that);
  b.scalar("tau_newton_meter", tau0 * that * units::eV_to_newton_meter);

  const geom::AllenWrench shape{a, bb, S, S};
  const double I = geom::wrench_moment_of_inertia(
      shape, rho_natural(p.mat.at("rho_A_kg_m3")),
      rho_natural(p.mat.at("rho_B_kg_m3")));
  b.scalar("inertia_natural", I);
  const auto tc = thermal::cooling_timescale_tc(
      {p.wp, p.nu}, n_natural(p.mat.at("n_density_per_m3")), cfg.T_env_K);
  b.scalar("t_c_seconds", tc.seconds);
  const auto w = dyn::terminal_angular_velocity(
      [&](double u) { return wgt(k, u, cfg, p.nu); },
      [&](double u) { return wgt(3, u, cfg, p.nu); }, p.u0, tc.natural, tau0, I,
      cfg.quad);
  if (!w.converged) b.converged = false;
  b.scalar("omega_hat_T", w.omega_hat);
  b.scalar("prefactor_per_s", w.prefactor_per_s);
  b.scalar("omega_T_per_s", w.omega_per_s);

  if (cfg.sweep.variable == "u") {
    b.columns = {"u", "tau_hat", "tau_newton_meter", "error_newton_meter"};
    for (double u : cfg.sweep.grid) {
      const double t = wgt(k, u, cfg, p.nu);
      b.row({u, t, tau0 * t * units::eV_to_newton_meter,
             cfg.quad.rel_tol * std::fabs(tau0 * t) * units::eV_to_newton_meter});
    }
  }
}

void run_dual_flags(const Config& cfg, Builder& b) {
  const Params p = make_params(cfg);
  const double a = p.geo.at("a"), bb = p.geo.at("b"), h = p.geo.at("h"),
               t = p.geo.at("t"), r = p.geo.at("r");
  const double S_A = pi * r * r;

  geom::TwoPartBody body;
  body.shape = geom::DualFlags{a, bb, h, t, S_A};
  body.material_A = materials::Drude{p.wp, p.nu};
  body.material_B = materials::ConstantDielectric{p.chi_B};
  const thermal::ThermalPair th =
      thermal::ThermalPair::from_kelvin(cfg.T_env_K, cfg.T_body_K);
  const auto torque = obs::torque_second_order(body, th, cfg.quad);
  if (!torque[2].converged && !torque[2].exact_zero) b.converged = false;
  b.scalar("tau_z_newton_meter", torque[2].value_si);
  b.scalar("tau_z_error", torque[2].numerical_error);

  // Equivalent point-tag wrench: flags collapsed onto the attachment points
  // with cross section t*h; ratio -> 1 as h -> 0.
  body.shape = geom::AllenWrench{a, bb, S_A, t * h};
  const auto tw = obs::torque_second_order(body, th, cfg.quad);
  b.scalar("wrench_equiv_newton_meter", tw[2].value_si);

  // Enhancement over the plain wire-tag wrench of the same build.
  body.shape = geom::AllenWrench{a, bb, S_A, S_A};
  const auto twire = obs::torque_second_order(body, th, cfg.quad);
  b.scalar("wire_wrench_newton_meter", twire[2].value_si);
  if (twire[2].value_si != 0.0)
    b.scalar("flag_enhancement", torque[2].value_si / twire[2].value_si);

  b.columns = {"u", "tau_z_newton_meter", "error_newton_meter"};
  b.row({p.u0, torque[2].value_si, torque[2].numerical_error});
}

void run_voxel(const Config& cfg, Builder& b) {
  const Params p = make_params(cfg);
  const double a = p.geo.at("a"), bb = p.geo.at("b"), r = p.geo.at("r");
  const double S = pi * r * r;
  const geom::Needle needle{a, bb, S};

  geom::TwoPartBody body;
  if (!cfg.cloud_path.empty())
    body.shape = geom::load_point_cloud(cfg.cloud_path);
  else
    body.shape = geom::voxelize_needle(
        needle, static_cast<int>(cfg.geometry.at("points_per_part")));
  body.material_A = materials::ConstantDielectric{p.chi_A};
  body.material_B = materials::Drude{p.wp, p.nu};
  const thermal::ThermalPair th =
      thermal::ThermalPair::from_kelvin(cfg.T_env_K, cfg.T_body_K);
  const obs::ObservableResult f = obs::force_z(body, th, cfg.quad);
  if (!f.converged && !f.exact_zero) b.converged = false;
  b.scalar("F_voxel_newton", f.value_si);
  b.scalar("F_voxel_error", f.numerical_error);

  if (cfg.cloud_path.empty()) {
    geom::TwoPartBody exact = body;
    exact.shape = needle;
    const obs::ObservableResult fe = obs::force_z(exact, th, cfg.quad);
    b.scalar("F_needle_newton", fe.value_si);
    if (fe.value_si != 0.0)
      b.scalar("rel_diff_vs_needle", f.value_si / fe.value_si - 1.0);
  }

  b.columns = {"u", "F_newton", "error_newton"};
  b.row({p.u0, f.value_si, f.numerical_error});
}

void run_first_order(const Config& cfg, Builder& b) {
  const double A = cfg.materials.at("alpha_scale");
  materials::PolarizabilityTensor alpha;
  alpha.alpha = [A](double) {
    materials::Mat3c m{};
    m[1] = A;   // alpha_xy
    m[3] = -A;  // alpha_yx
    return m;
  };
  const double T = units::temperature_eV(cfg.T_env_K);

  const auto tau_z = [&](double T_body_K) {
    const thermal::ThermalPair th =
        thermal::ThermalPair::from_kelvin(cfg.T_env_K, T_body_K);
    return obs::torque_first_order(alpha, th, cfg.quad)[2];
  };
  const auto closed = [&](double u) {
    const double T4 = std::pow(T, 4);
    return -2.0 * pi * pi * A / 45.0 * (std::pow(u, 4) - 1.0) * T4;
  };

  const obs::ObservableResult t0 = tau_z(cfg.T_body_K);
  if (!t0.converged && !t0.exact_zero) b.converged = false;
  b.scalar("tau_z_newton_meter", t0.value_si);
  const double u0 = cfg.T_body_K / cfg.T_env_K;
  b.scalar("tau_z_closed_newton_meter", closed(u0) * units::eV_to_newton_meter);
  if (t0.value_si != 0.0)
    b.scalar("rel_diff_vs_closed",
             t0.value_natural / closed(u0) - 1.0);
  b.note("constant antisymmetric Re alpha: tau_z has the closed form "
         "-2 pi^2 A (T'^4 - T^4)/45");

  if (cfg.sweep.variable == "u") {
    b.columns = {"u", "tau_z_newton_meter", "closed_newton_meter", "error_newton_meter"};
    for (double u : cfg.sweep.grid) {
      const obs::ObservableResult tz = tau_z(u * cfg.T_env_K);
      if (!tz.converged && !tz.exact_zero) b.converged = false;
      b.row({u, tz.value_si, closed(u) * units::eV_to_newton_meter,
             tz.numerical_error});
    }
  }
}

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : scenario_defs()) out.push_back(name);
  return out;
}

Config parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("config: top level must be an object");
  check_keys(j,
             {"scenario", "temperatures", "geometry", "materials", "cloud_path",
              "quadrature", "sweep", "output"},
             "top level");
  if (!j.contains("scenario") || !j["scenario"].is_string())
    throw std::runtime_error("config: missing \"scenario\" string");

  Config cfg;
  cfg.scenario = j["scenario"].get<std::string>();
  const auto& defs = scenario_defs();
  const auto it = defs.find(cfg.scenario);
  if (it == defs.end())
    throw std::runtime_error("config: unknown scenario \"" + cfg.scenario + "\"");
  const ScenarioDef& def = it->second;
  cfg.geometry = def.geometry;
  cfg.materials = def.materials;
  cfg.sweep = def.sweep;
  cfg.quad.rel_tol = def.default_rel_tol;
  cfg.basename = cfg.scenario;

  if (j.contains("temperatures")) {
    const auto& t = j["temperatures"];
    check_keys(t, {"T_env_K", "T_body_K"}, "temperatures");
    if (t.contains("T_env_K")) cfg.T_env_K = positive_number(t["T_env_K"], "T_env_K");
    if (t.contains("T_body_K"))
      cfg.T_body_K = positive_number(t["T_body_K"], "T_body_K");
  }
  if (j.contains("geometry")) {
    std::vector<std::string> allowed;
    for (const auto& [k, _] : def.geometry) allowed.push_back(k);
    check_keys(j["geometry"], allowed, "geometry (scenario " + cfg.scenario + ")");
    for (const auto& [k, v] : j["geometry"].items())
      cfg.geometry[k] = positive_number(v, "geometry." + k);
  }
  if (j.contains("materials")) {
    std::vector<std::string> allowed;
    for (const auto& [k, _] : def.materials) allowed.push_back(k);
    check_keys(j["materials"], allowed, "materials (scenario " + cfg.scenario + ")");
    for (const auto& [k, v] : j["materials"].items())
      cfg.materials[k] = positive_number(v, "materials." + k);
  }
  if (j.contains("cloud_path")) {
    if (cfg.scenario != "voxel")
      throw std::runtime_error("config: cloud_path is only valid for the voxel scenario");
    if (!j["cloud_path"].is_string())
      throw std::runtime_error("config: cloud_path must be a string");
    cfg.cloud_path = j["cloud_path"].get<std::string>();
  }
  if (j.contains("quadrature")) {
    const auto& q = j["quadrature"];
    check_keys(q, {"rel_tol", "abs_tol", "max_subdivisions", "mc_samples", "seed"},
               "quadrature");
    if (q.contains("rel_tol")) cfg.quad.rel_tol = positive_number(q["rel_tol"], "rel_tol");
    if (q.contains("abs_tol")) cfg.quad.abs_tol = positive_number(q["abs_tol"], "abs_tol");
    if (q.contains("max_subdivisions")) {
      cfg.quad.max_subdivisions = q["max_subdivisions"].get<int>();
      if (cfg.quad.max_subdivisions < 1)
        throw std::runtime_error("config: max_subdivisions must be >= 1");
    }
    if (q.contains("mc_samples")) {
      cfg.quad.mc_samples = q["mc_samples"].get<std::int64_t>();
      if (cfg.quad.mc_samples < 10000)
        throw std::runtime_error("config: mc_samples must be >= 10000");
    }
    if (q.contains("seed")) cfg.quad.seed = q["seed"].get<std::uint64_t>();
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    check_keys(s, {"variable", "grid"}, "sweep");
    if (s.contains("variable")) cfg.sweep.variable = s["variable"].get<std::string>();
    if (s.contains("grid")) {
      cfg.sweep.grid.clear();
      for (const auto& v : s["grid"])
        cfg.sweep.grid.push_back(positive_number(v, "sweep.grid entry"));
    }
    bool ok = cfg.sweep.variable.empty() && cfg.sweep.grid.empty();
    for (const auto& v : def.sweep_variables)
      if (cfg.sweep.variable == v) ok = true;
    if (!ok)
      throw std::runtime_error("config: sweep variable \"" + cfg.sweep.variable +
                               "\" not valid for scenario " + cfg.scenario);
    for (size_t i = 1; i < cfg.sweep.grid.size(); ++i)
      if (cfg.sweep.grid[i] <= cfg.sweep.grid[i - 1])
        throw std::runtime_error("config: sweep grid must be strictly increasing");
  }
  if (j.contains("output")) {
    check_keys(j["output"], {"basename"}, "output");
    if (j["output"].contains("basename"))
      cfg.basename = j["output"]["basename"].get<std::string>();
  }
  return cfg;
}

Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RunOutput run(const Config& cfg) {
  Builder b(cfg);
  if (cfg.scenario == "needle")
    run_needle(cfg, b);
  else if (cfg.scenario == "shell")
    run_shell(cfg, b);
  else if (cfg.scenario == "janus-ball")
    run_janus(cfg, b);
  else if (cfg.scenario == "plate")
    run_plate(cfg, b);
  else if (cfg.scenario == "wrench-large")
    run_wrench(cfg, b, true);
  else if (cfg.scenario == "wrench-small")
    run_wrench(cfg, b, false);
  else if (cfg.scenario == "dual-flags")
    run_dual_flags(cfg, b);
  else if (cfg.scenario == "voxel")
    run_voxel(cfg, b);
  else if (cfg.scenario == "first-order-torque")
    run_first_order(cfg, b);
  else
    throw std::runtime_error("unknown scenario " + cfg.scenario);
  return b.finish();
}

std::string default_config(const std::string& scenario) {
  const auto& defs = scenario_defs();
  const auto it = defs.find(scenario);
  if (it == defs.end())
    throw std::runtime_error("unknown scenario \"" + scenario + "\"");
  const ScenarioDef& def = it->second;
  json j;
  j["scenario"] = scenario;
  j["temperatures"] = {{"T_env_K", 300.0}, {"T_body_K", 600.0}};
  j["geometry"] = json::object();
  for (const auto& [k, v] : def.geometry) j["geometry"][k] = v;
  j["materials"] = json::object();
  for (const auto& [k, v] : def.materials) j["materials"][k] = v;
  quad::QuadratureSpec q;
  j["quadrature"] = {{"rel_tol", def.default_rel_tol},
                     {"abs_tol", q.abs_tol},
                     {"max_subdivisions", q.max_subdivisions},
                     {"mc_samples", q.mc_samples},
                     {"seed", q.seed}};
  if (!def.sweep.variable.empty())
    j["sweep"] = {{"variable", def.sweep.variable}, {"grid", def.sweep.grid}};
  j["output"] = {{"basename", scenario}};
  return j.dump(2) + "\n";
}

std::string list_scenarios() {
  std::ostringstream out;
  out << "available scenarios:\n";
  for (const auto& [name, def] : scenario_defs()) {
    out << "  " << name << "\n    geometry:";
    if (def.geometry.empty()) out << " (none)";
    for (const auto& [k, v] : def.geometry) out << " " << k << "=" << v;
    out << "\n    materials:";
    for (const auto& [k, v] : def.materials) out << " " << k << "=" << v;
    out << "\n    sweep variables:";
    if (def.sweep_variables.empty()) out << " (none)";
    for (const auto& v : def.sweep_variables) out << " " << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace qvac::scenario
