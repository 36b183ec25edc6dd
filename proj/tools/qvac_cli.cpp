#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qvac/mc.hpp"
#include "qvac/scenario.hpp"

namespace fs = std::filesystem;

namespace {

int run_config(const std::string& config_path, const std::string& out_dir,
               bool allow_unconverged) {
  qvac::scenario::Config cfg;
  try {
    cfg = qvac::scenario::parse_config_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  qvac::scenario::RunOutput out;
  try {
    out = qvac::scenario::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << (dir / name).string() << "\n";
      return false;
    }
    f << text;
    return true;
  };
  if (!write(out.basename + ".csv", out.csv)) return 1;
  if (!write(out.basename + ".json", out.summary_json)) return 1;
  if (!out.plot_script.empty() && !write(out.basename + ".gp", out.plot_script))
    return 1;

  std::cout << "wrote " << (dir / (out.basename + ".csv")).string() << "\n";
  std::cout << "wrote " << (dir / (out.basename + ".json")).string() << "\n";
  for (const auto& n : out.notes) std::cout << "note: " << n << "\n";
  if (!out.converged) {
    std::cerr << (allow_unconverged ? "warning" : "error")
              << ": one or more integrals did not meet the convergence contract\n";
    if (!allow_unconverged) return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-vacuum force and torque scenario runner"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options after the subcommand too

  int threads = 0;
  bool allow_unconverged = false;
  std::string out_dir = ".";
  app.add_option("--threads", threads, "worker thread cap (0 = hardware)");
  app.add_flag("--allow-unconverged", allow_unconverged,
               "exit 0 even if convergence contracts fail");
  app.add_option("--out", out_dir, "output directory");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "execute a scenario config");
  run_cmd->add_option("config", config_path, "JSON config file")->required();

  auto* list_cmd = app.add_subcommand("list", "list scenarios and their schemas");

  CLI11_PARSE(app, argc, argv);

  if (threads > 0) qvac::quad::set_max_threads(threads);

  if (list_cmd->parsed()) {
    std::cout << qvac::scenario::list_scenarios();
    return 0;
  }
  return run_config(config_path, out_dir, allow_unconverged);
}
