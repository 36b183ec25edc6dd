#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qvac/scenario.hpp"

using namespace qvac;
using json = nlohmann::json;

namespace {

double summary_value(const scenario::RunOutput& out, const std::string& key) {
  const json j = json::parse(out.summary_json);
  REQUIRE(j.contains(key));
  return j.at(key).get<double>();
}

scenario::RunOutput run_text(const std::string& cfg_text) {
  return scenario::run(scenario::parse_config(cfg_text));
}

}  // namespace

TEST_CASE("config parsing is strict") {
  CHECK_THROWS_AS(scenario::parse_config(R"({"scenario":"needle","bogus":1})"),
                  std::runtime_error);
  CHECK_THROWS_AS(
      scenario::parse_config(R"({"scenario":"needle","geometry":{"z_nm":1}})"),
      std::runtime_error);
  CHECK_THROWS_AS(
      scenario::parse_config(R"({"scenario":"needle","materials":{"wp":9}})"),
      std::runtime_error);
  CHECK_THROWS_AS(
      scenario::parse_config(R"({"scenario":"needle","quadrature":{"tol":1}})"),
      std::runtime_error);
  CHECK_THROWS_AS(scenario::parse_config(R"({"scenario":"no-such-thing"})"),
                  std::runtime_error);
  CHECK_THROWS_AS(scenario::parse_config(R"({"scenario":"needle","cloud_path":"x"})"),
                  std::runtime_error);
  CHECK_THROWS_AS(scenario::parse_config(R"([1,2,3])"), std::runtime_error);
  CHECK_THROWS_AS(scenario::parse_config(R"({})"), std::runtime_error);

  // numeric validation
  CHECK_THROWS_AS(scenario::parse_config(
                      R"({"scenario":"needle","temperatures":{"T_env_K":-5}})"),
                  std::runtime_error);
  CHECK_THROWS_AS(scenario::parse_config(
                      R"({"scenario":"needle","geometry":{"a_nm":0}})"),
                  std::runtime_error);
  CHECK_THROWS_AS(scenario::parse_config(
                      R"({"scenario":"needle","quadrature":{"mc_samples":10}})"),
                  std::runtime_error);

  // sweep validation
  CHECK_THROWS_AS(
      scenario::parse_config(
          R"({"scenario":"needle","sweep":{"variable":"u","grid":[2,1]}})"),
      std::runtime_error);
  CHECK_THROWS_AS(
      scenario::parse_config(
          R"({"scenario":"plate","sweep":{"variable":"a_nm","grid":[1,2]}})"),
      std::runtime_error);
}

TEST_CASE("malformed json reports its position") {
  try {
    scenario::parse_config("{\n  \"scenario\": \"needle\",\n  oops\n}");
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("scenario catalogue") {
  const auto names = scenario::scenario_names();
  CHECK(names.size() == 9);
  const std::string listing = scenario::list_scenarios();
  for (const auto& n : names)
    CHECK(listing.find(n) != std::string::npos);
  CHECK(listing.find("janus-ball") != std::string::npos);

  // every default config round-trips through the strict parser
  for (const auto& n : names) {
    const std::string text = scenario::default_config(n);
    const scenario::Config cfg = scenario::parse_config(text);
    CHECK(cfg.scenario == n);
  }
  CHECK_THROWS_AS(scenario::default_config("nope"), std::runtime_error);
}

TEST_CASE("csv output carries full provenance and is deterministic") {
  const std::string text = R"({"scenario":"needle"})";
  const auto a = run_text(text);
  const auto b = run_text(text);
  CHECK(a.csv == b.csv);
  CHECK(a.summary_json == b.summary_json);

  CHECK(a.csv.find("# scenario = needle") != std::string::npos);
  CHECK(a.csv.find("# quadrature.seed = ") != std::string::npos);
  CHECK(a.csv.find("# columns: u,F_hat,F_newton,error_newton") != std::string::npos);
  CHECK(!a.plot_script.empty());
  CHECK(a.converged);

  // the u = 1 row of the sweep is an equilibrium point: zero force
  std::istringstream lines(a.csv);
  std::string line;
  bool found = false;
  while (std::getline(lines, line)) {
    if (line.rfind("1,", 0) == 0) {
      double u, fhat;
      char comma;
      std::istringstream row(line);
      row >> u >> comma >> fhat;
      CHECK(u == 1.0);
      CHECK(fhat == 0.0);
      found = true;
      break;
    }
  }
  CHECK(found);
}

TEST_CASE("needle summary: frozen saturated force, friction and cooling scales") {
  const auto out = run_text(R"({"scenario":"needle"})");
  CHECK(summary_value(out, "F_hat") ==
        doctest::Approx(1.8252672404114399e18).epsilon(1e-9));
  CHECK(summary_value(out, "gamma_N_s_per_m") ==
        doctest::Approx(1.299514504513275e-22).epsilon(1e-9));
  CHECK(summary_value(out, "t_c_seconds") ==
        doctest::Approx(6.57774122941363e-5).epsilon(1e-9));
  CHECK(summary_value(out, "v_terminal_friction_m_s") ==
        doctest::Approx(-2.7077).epsilon(1e-3));
  CHECK(summary_value(out, "t0_years") == doctest::Approx(16.47).epsilon(1e-2));
  CHECK(summary_value(out, "ratio_t0_over_tc") > 1e9);
}

TEST_CASE("plate summary: frozen prefactor and reduced force") {
  const auto out = run_text(
      R"({"scenario":"plate","sweep":{"variable":"","grid":[]}})");
  CHECK(out.converged);
  CHECK(summary_value(out, "prefactor_newton") ==
        doctest::Approx(4.1981056368905545e-13).epsilon(1e-9));
  CHECK(summary_value(out, "F_hat") == doctest::Approx(-371.73).epsilon(5e-3));
  CHECK(summary_value(out, "F_hat_thin_limit") ==
        doctest::Approx(-371.742).epsilon(1e-3));
  CHECK(summary_value(out, "F_newton") < 0.0);
}

TEST_CASE("wrench summaries: frozen torque scales and terminal spin") {
  const auto large = run_text(R"({"scenario":"wrench-large"})");
  CHECK(summary_value(large, "tau0_newton_meter") ==
        doctest::Approx(7.458589259539301e-22).epsilon(1e-9));
  CHECK(summary_value(large, "omega_T_per_s") ==
        doctest::Approx(9.15e-10).epsilon(1e-2));

  const auto small = run_text(R"({"scenario":"wrench-small"})");
  CHECK(summary_value(small, "tau0_newton_meter") ==
        doctest::Approx(9.43034352972321e-31).epsilon(1e-9));
  CHECK(summary_value(small, "inertia_natural") ==
        doctest::Approx(2.1196444312090187e21).epsilon(1e-9));
  CHECK(summary_value(small, "prefactor_per_s") ==
        doctest::Approx(4.215987891970428e-7).epsilon(1e-9));
  CHECK(summary_value(small, "omega_hat_T") ==
        doctest::Approx(21188.1499).epsilon(1e-5));
  CHECK(summary_value(small, "omega_T_per_s") ==
        doctest::Approx(0.008932898338692843).epsilon(1e-5));
}

TEST_CASE("janus summary: frozen terminal velocity") {
  const auto out = run_text(R"({"scenario":"janus-ball"})");
  CHECK(out.converged);
  CHECK(summary_value(out, "v_terminal_m_s") ==
        doctest::Approx(-2.0088995204632425e-10).epsilon(1e-6));
}

TEST_CASE("first-order scenario matches its closed form") {
  const auto out = run_text(
      R"({"scenario":"first-order-torque","sweep":{"variable":"","grid":[]}})");
  CHECK(out.converged);
  CHECK(std::fabs(summary_value(out, "rel_diff_vs_closed")) < 1e-6);
}
