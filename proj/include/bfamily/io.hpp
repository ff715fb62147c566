#pragma once

#include <filesystem>
#include <vector>

#include "bfamily/diffeo.hpp"
#include "bfamily/probe.hpp"
#include "bfamily/state.hpp"

namespace bfamily {

/// CSV with header `x,value`, one row per grid point, 17 significant digits.
void write_field_csv(const std::filesystem::path& path, const ScalarField& f);

/// Reads a field written by write_field_csv; the x column must match `grid`.
ScalarField read_field_csv(const std::filesystem::path& path, const Grid& grid);

/// Displacement CSV plus a sidecar with the same stem and a .json extension
/// holding {length, n_points, min_phi_x}.
void write_diffeo(const std::filesystem::path& csv_path, const Diffeo& phi);
Diffeo read_diffeo(const std::filesystem::path& csv_path);

/// Directory of snapshot_NNNN_{phi,v,u,rho}.csv files plus trajectory.json
/// {b, dt, t_final, grid, stride, snapshots with diagnostics}.
void write_lagrangian_trajectory(const std::filesystem::path& dir, const Trajectory& traj, double b,
                                 const SolverConfig& cfg);

/// Same layout with snapshot_NNNN_{u,rho}.csv.
void write_euler_trajectory(const std::filesystem::path& dir, const std::vector<EulerState>& snapshots, double b,
                            const SolverConfig& cfg);

/// probe_report.json and probe_table.csv in `dir`.
void write_probe_report(const std::filesystem::path& dir, const ProbeReport& report);

}  // namespace bfamily
