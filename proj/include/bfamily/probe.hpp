#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bfamily/errors.hpp"
#include "bfamily/flow.hpp"
#include "bfamily/spectral.hpp"

namespace bfamily {

/// Closed interval [lo, hi] on the unwrapped line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
};

/// Distance between two intervals; zero when they overlap.
double separation(const Interval& a, const Interval& b);

/// Smallest interval holding every grid point with |f| > rel * max|f|.
/// Empty for the zero field.
std::optional<Interval> numerical_support(const ScalarField& f, double rel = 1e-13);

struct ProbeSpec {
  ScalarField base_u;
  ScalarField base_rho;
  ScalarField w1;
  double a_star;
  double radius;
  std::vector<int> n_list;
  double b;
  SobolevIndex s;
  SolverConfig cfg;

  /// Throws Config when the base density comes within 2 of a_star, when
  /// w1(a_star) vanishes, when a support reaches within 5 of the seam, or
  /// when n_list is not strictly increasing and positive.
  void check() const;
};

/// Default experiment, laid out for L = 40 (4096 points unless another grid is given):
///   a_star = 12, R = 0.1, n in {4, 8, 16, 32}, s = 2, b = 2, dt = 2.5e-4,
///   u_base   = 0.1 bump((x - 12) / 4),
///   rho_base = 0.01 bump((x - 7.5) / 2),
///   w1       = 24 step((x - 5) / 6) step((35 - x) / 21),
/// with bump and step from presets.hpp. The long falling ramp of w1 keeps the
/// n = 4 member away from wave breaking.
ProbeSpec default_probe_spec(const Grid& grid = Grid(4096, 40.0));

struct TransversalitySample {
  double t;
  std::optional<double> value;
  std::optional<ErrorCategory> failure;
  std::string error;
};

/// (d Psi at t (u_base, rho_base) in direction (w1, 0)) evaluated at a_star
/// for each t. Integration failures are recorded per sample.
std::vector<TransversalitySample> measure_transversality(const ScalarField& base_u, const ScalarField& base_rho,
                                                         const ScalarField& w1, double a_star, double b,
                                                         const SolverConfig& cfg, const std::vector<double>& t_grid);

/// c bump((x - a_star) L_lip / r_n) with r_n = m |w1|_{H^s} / (8 n) and c chosen
/// so that the H^{s-1} norm equals R / 4. Throws UnderResolution when
/// r_n / L_lip < 4 spacing.
ScalarField build_hump(int n, double m, double w1_norm, double radius, double a_star, double L_lip, SobolevIndex s,
                       const Grid& grid);

struct ProbeMember {
  int n = 0;
  bool ok = false;
  std::optional<ErrorCategory> failure;
  std::string error;
  double initial_u_distance = 0.0;
  double expected_initial_u_distance = 0.0;
  double initial_rho_distance = 0.0;
  double final_u_distance = 0.0;
  double final_rho_distance = 0.0;
  double r_n = 0.0;
  double hump_norm = 0.0;
  double hump_center = 0.0;
  double hump_center_tilde = 0.0;
  double hump_center_gap = 0.0;
  double n_times_gap = 0.0;
  /// Images of the base density support (A, C) and of the hump support (B, D)
  /// under phi_n and phi~_n.
  Interval A, B, C, D;
  bool hump_supports_disjoint = false;
  /// separation(A, B) >= 1 / L_lip - 2 max(width B, width D).
  bool base_hump_separated = false;
  /// width B <= 2 r_n, with 10% measurement tolerance.
  bool hump_width_bounded = false;
  /// H^{s-1} norm of the transported hump over that of the initial hump.
  double pushforward_ratio = 0.0;
  /// Both initial pairs lie in the radius-R ball about (u_base, rho_base).
  bool in_ball = false;
};

struct ProbeReport {
  double transversality = 0.0;
  double w1_norm = 0.0;
  double m = 0.0;
  double L_lip = 0.0;
  double base_min_jacobian = 0.0;
  double base_max_jacobian = 0.0;
  std::vector<ProbeMember> members;

  bool initial_distances_exact = false;
  /// n * gap within [0.5, 2] |transversality| for every n >= 8.
  bool gap_tracks_transversality = false;
  /// min final rho distance >= 0.25 max over all members.
  bool rho_distance_floor = false;
  bool initial_distance_falls = false;
  /// Least-squares slope of log final rho distance against log n.
  double rho_distance_slope = 0.0;
  bool rho_slope_ok = false;
  bool supports_ok = false;
  bool all_members_ok = false;
};

/// Runs both data pairs for every n. `workers` > 1 runs members concurrently;
/// the report does not depend on the worker count.
ProbeReport run_nonuniformity_probe(const ProbeSpec& spec, unsigned workers = 1);

struct ScaleCheck {
  double T = 0.0;
  bool ok = false;
  std::optional<ErrorCategory> failure;
  std::string error;
  double u_discrepancy = 0.0;
  double rho_discrepancy = 0.0;
  /// max(u, rho discrepancy) / max(|u|_{H^s}, |rho|_{H^{s-1}}) of the direct route.
  double relative = 0.0;
};

std::vector<ScaleCheck> check_scale_invariance(const ScalarField& u0, const ScalarField& rho0, double b,
                                               SobolevIndex s, const std::vector<double>& T_list,
                                               const SolverConfig& cfg);

}  // namespace bfamily
