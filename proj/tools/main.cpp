#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "bfamily/config.hpp"
#include "bfamily/errors.hpp"
#include "bfamily/run.hpp"

namespace {

const std::map<std::string, std::string> kHelp{
    {"command", "solve-lagrangian | solve-euler | compare | probe | scale-check | transversality | convergence"},
    {"length", "period L (40)"},
    {"n_points", "grid points, even (2048; probe 4096)"},
    {"s", "Sobolev index, > 1.5 (2)"},
    {"b", "model parameter (2)"},
    {"dt", "time step (5e-4; probe 2.5e-4)"},
    {"t_final", "final time (1)"},
    {"stride", "snapshot stride in steps, 0 keeps first and last (0)"},
    {"validity_margin", "smallest admissible phi_x (1e-8)"},
    {"preset", "bump-pair | steep-pair | constant | single-mode"},
    {"u0_file", "initial velocity CSV (x,value)"},
    {"rho0_file", "initial density CSV (x,value)"},
    {"output_dir", "output directory (out)"},
    {"seed", "recorded in the manifest (0)"},
    {"euler_filter", "exponential filter in the Eulerian solver (false)"},
    {"n_list", "probe sequence indices (4,8,16,32)"},
    {"radius", "probe ball radius (0.1)"},
    {"a_star", "probe point (12)"},
    {"workers", "concurrent probe members (1)"},
    {"t_grid", "transversality scan points (0,0.25,0.5,0.75,1)"},
    {"T_list", "scale-check horizons (0.5,2)"},
    {"levels", "convergence refinement levels (2)"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian and Eulerian solvers for the two-component b-family"};
  app.set_version_flag("--version", bfamily::kVersion);
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value file or a manifest.json from an earlier run");
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const std::string& key : bfamily::config_keys()) {
    if (key == "command") continue;
    options[key] = app.add_option("--" + key, values[key], kHelp.at(key));
  }
  std::string command;
  app.add_option("command", command, kHelp.at("command"));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return bfamily::exit_code(bfamily::ErrorCategory::Config);
  }

  try {
    bfamily::KeyValues file;
    if (!config_path.empty()) file = bfamily::read_config_file(config_path);
    bfamily::KeyValues flags;
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) flags[key] = values[key];
    }
    if (!command.empty()) flags["command"] = command;
    if (!file.count("command") && !flags.count("command")) {
      std::cerr << "error [config]: no command given\n" << app.help();
      return bfamily::exit_code(bfamily::ErrorCategory::Config);
    }
    const bfamily::RunConfig cfg = bfamily::parse_config(file, flags);
    return bfamily::run(cfg, std::cout);
  } catch (const bfamily::Error& e) {
    std::cerr << "error [" << bfamily::to_string(e.category()) << "]: " << e.what() << "\n";
    return bfamily::exit_code(e.category());
  }
}
