#pragma once

#include <ostream>

#include "bfamily/config.hpp"
#include "bfamily/state.hpp"

namespace bfamily {

inline constexpr const char* kVersion = "0.1.0";

/// Field files when given, otherwise the named preset, on the config grid.
std::pair<ScalarField, ScalarField> initial_data(const RunConfig& cfg);

SolverConfig solver_config(const RunConfig& cfg);

/// Executes cfg.command, writes its reports and manifest.json into
/// cfg.output_dir and returns the process exit code. Commands that record
/// per-item failures (probe, scale-check, transversality) still write their
/// report and then return the code of the first failure.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace bfamily
