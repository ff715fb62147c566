#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bfamily {

enum class Command { SolveLagrangian, SolveEuler, Compare, Probe, ScaleCheck, Transversality, Convergence };

std::string_view to_string(Command c);

/// Fully resolved run configuration. Keys and defaults:
///
///   command          solve-lagrangian | solve-euler | compare | probe |
///                    scale-check | transversality | convergence
///   length           40        period L
///   n_points         2048      even, >= 8 (probe: 4096)
///   s                2         Sobolev index, > 1.5
///   b                2         model parameter
///   dt               5e-4      time step (probe: 2.5e-4)
///   t_final          1         final time, >= dt
///   stride           0         snapshot stride in steps; 0 keeps first and last
///   validity_margin  1e-8      smallest admissible phi_x, in [0, 1)
///   preset           bump-pair initial data when no field files are given
///   u0_file          ""        CSV (x,value) on the run grid
///   rho0_file        ""        CSV (x,value); zero density when empty
///   output_dir       out
///   seed             0         recorded in the manifest; no command draws random numbers
///   euler_filter     false     exponential filter in the Eulerian solver
///   n_list           4,8,16,32 probe sequence indices
///   radius           0.1       probe ball radius R
///   a_star           12        probe point
///   workers          1         probe members run concurrently
///   t_grid           0,0.25,0.5,0.75,1   transversality scan
///   T_list           0.5,2     scale-check horizons
///   levels           2         convergence refinement levels
struct RunConfig {
  Command command = Command::SolveLagrangian;
  double length = 40.0;
  std::size_t n_points = 2048;
  double s = 2.0;
  double b = 2.0;
  double dt = 5e-4;
  double t_final = 1.0;
  std::size_t stride = 0;
  double validity_margin = 1e-8;
  std::string preset = "bump-pair";
  std::string u0_file;
  std::string rho0_file;
  std::string output_dir = "out";
  std::uint64_t seed = 0;
  bool euler_filter = false;
  std::vector<int> n_list{4, 8, 16, 32};
  double radius = 0.1;
  double a_star = 12.0;
  unsigned workers = 1;
  std::vector<double> t_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> T_list{0.5, 2.0};
  int levels = 2;
};

using KeyValues = std::map<std::string, std::string>;

/// Every recognized key, in documentation order.
const std::vector<std::string>& config_keys();

/// Flat `key = value` lines; `#` starts a comment. Throws Config naming the
/// line for malformed input and the key for unknown or repeated keys.
KeyValues parse_config_text(std::string_view text);

/// A flat config file, or a manifest.json written by run (its "config" object).
KeyValues read_config_file(const std::filesystem::path& path);

/// Defaults, then `file`, then `flags`. Throws Config naming the offending key.
RunConfig parse_config(const KeyValues& file, const KeyValues& flags = {});

/// Inverse of parse_config: every key with its resolved value.
KeyValues to_key_values(const RunConfig& cfg);

}  // namespace bfamily
