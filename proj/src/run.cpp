#include "bfamily/run.hpp"

#include <chrono>
#include <cmath>
#include <optional>

#include "bfamily/errors.hpp"
#include "bfamily/euler.hpp"
#include "bfamily/flow.hpp"
#include "bfamily/io.hpp"
#include "bfamily/presets.hpp"
#include "bfamily/probe.hpp"
#include "json_io.hpp"

namespace bfamily {

namespace fs = std::filesystem;
using detail::ordered_json;

std::pair<ScalarField, ScalarField> initial_data(const RunConfig& cfg) {
  const Grid g(cfg.n_points, cfg.length);
  if (!cfg.u0_file.empty()) {
    ScalarField u0 = read_field_csv(cfg.u0_file, g);
    ScalarField rho0 = cfg.rho0_file.empty() ? ScalarField(g) : read_field_csv(cfg.rho0_file, g);
    return {std::move(u0), std::move(rho0)};
  }
  InitialData d = make_preset(cfg.preset, g);
  if (!cfg.rho0_file.empty()) d.rho0 = read_field_csv(cfg.rho0_file, g);
  return {std::move(d.u0), std::move(d.rho0)};
}

SolverConfig solver_config(const RunConfig& cfg) {
  SolverConfig sc;
  sc.dt = cfg.dt;
  sc.t_final = cfg.t_final;
  sc.validity_margin = cfg.validity_margin;
  sc.stride = cfg.stride;
  return sc;
}

namespace {

struct Outcome {
  std::vector<std::string> outputs;
  std::optional<ErrorCategory> failure;
  std::string message;
};

void note_failure(Outcome& o, const std::optional<ErrorCategory>& f, const std::string& message) {
  if (f && !o.failure) {
    o.failure = f;
    o.message = message;
  }
}

Outcome solve_lagrangian(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const auto [u0, rho0] = initial_data(cfg);
  const SolverConfig sc = solver_config(cfg);
  const Trajectory traj = integrate(u0, rho0, cfg.b, sc);
  write_lagrangian_trajectory(out / "trajectory", traj, cfg.b, sc);
  double worst = 0.0;
  for (const LagrangianState& s : traj.snapshots) worst = std::max(worst, diagnose(s).conservation_error);
  const FlowDiagnostics d = diagnose(traj.final());
  log << "t = " << d.t << "  min phi_x = " << d.min_jacobian << "  conservation error = " << worst << "\n";
  return {{"trajectory/trajectory.json"}, std::nullopt, {}};
}

Outcome solve_euler(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const auto [u0, rho0] = initial_data(cfg);
  const SolverConfig sc = solver_config(cfg);
  EulerOptions opts;
  opts.filter = cfg.euler_filter;
  const auto snaps = euler_integrate(u0, rho0, cfg.b, sc, opts);
  write_euler_trajectory(out / "trajectory", snaps, cfg.b, sc);
  log << "t = " << snaps.back().t << "  mass drift = " << snaps.back().rho.integral() - snaps.front().rho.integral()
      << "\n";
  return {{"trajectory/trajectory.json"}, std::nullopt, {}};
}

Outcome compare(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const auto [u0, rho0] = initial_data(cfg);
  const SolverConfig sc = solver_config(cfg);
  EulerOptions opts;
  opts.filter = cfg.euler_filter;
  const Trajectory lag = integrate(u0, rho0, cfg.b, sc);
  const auto eul = euler_integrate(u0, rho0, cfg.b, sc, opts);
  ordered_json rows = ordered_json::array();
  double worst = 0.0;
  for (std::size_t k = 0; k < lag.snapshots.size() && k < eul.size(); ++k) {
    const EulerState e = reconstruct(lag.snapshots[k]);
    const double sup_u = max_abs_difference(e.u, eul[k].u);
    worst = std::max(worst, sup_u);
    rows.push_back({{"t", e.t},
                    {"sup_u", sup_u},
                    {"sup_rho", max_abs_difference(e.rho, eul[k].rho)},
                    {"h1_u", sobolev_norm(e.u - eul[k].u, 1.0)},
                    {"l2_rho", sobolev_norm(e.rho - eul[k].rho, 0.0)}});
  }
  detail::write_json(out / "compare.json", {{"max_sup_u", worst}, {"snapshots", rows}});
  log << "max sup|u_L - u_E| = " << worst << "\n";
  return {{"compare.json"}, std::nullopt, {}};
}

ProbeSpec probe_spec(const RunConfig& cfg) {
  ProbeSpec spec = default_probe_spec(Grid(cfg.n_points, cfg.length));
  spec.a_star = cfg.a_star;
  spec.radius = cfg.radius;
  spec.n_list = cfg.n_list;
  spec.b = cfg.b;
  spec.s = SobolevIndex(cfg.s);
  spec.cfg = solver_config(cfg);
  spec.cfg.t_final = 1.0;
  spec.cfg.stride = 0;
  return spec;
}

Outcome probe(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const ProbeReport report = run_nonuniformity_probe(probe_spec(cfg), cfg.workers);
  write_probe_report(out, report);
  Outcome o{{"probe_report.json", "probe_table.csv"}, std::nullopt, {}};
  for (const ProbeMember& m : report.members) {
    note_failure(o, m.failure, m.error);
    log << "n = " << m.n << "  " << (m.ok ? "final rho distance = " + detail::format_double(m.final_rho_distance)
                                          : "failed: " + m.error)
        << "\n";
  }
  return o;
}

Outcome scale_check(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const auto [u0, rho0] = initial_data(cfg);
  const auto checks = check_scale_invariance(u0, rho0, cfg.b, SobolevIndex(cfg.s), cfg.T_list, solver_config(cfg));
  Outcome o{{"scale_check.json"}, std::nullopt, {}};
  ordered_json rows = ordered_json::array();
  for (const ScaleCheck& c : checks) {
    note_failure(o, c.failure, c.error);
    rows.push_back(detail::to_json(c));
    log << "T = " << c.T << "  " << (c.ok ? "relative discrepancy = " + detail::format_double(c.relative) : c.error)
        << "\n";
  }
  detail::write_json(out / "scale_check.json", {{"checks", rows}});
  return o;
}

Outcome transversality(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  const ProbeSpec spec = probe_spec(cfg);
  const auto samples =
      measure_transversality(spec.base_u, spec.base_rho, spec.w1, spec.a_star, spec.b, spec.cfg, cfg.t_grid);
  Outcome o{{"transversality.json"}, std::nullopt, {}};
  ordered_json rows = ordered_json::array();
  for (const TransversalitySample& s : samples) {
    note_failure(o, s.failure, s.error);
    rows.push_back(detail::to_json(s));
    log << "t = " << s.t << "  " << (s.value ? detail::format_double(*s.value) : s.error) << "\n";
  }
  detail::write_json(out / "transversality.json",
                     {{"a_star", spec.a_star}, {"w1_at_a_star", evaluate(spec.w1, spec.a_star)}, {"samples", rows}});
  return o;
}

Outcome convergence(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  ordered_json rows = ordered_json::array();
  std::optional<double> previous;
  for (int level = 0; level < cfg.levels; ++level) {
    RunConfig c = cfg;
    c.n_points = cfg.n_points << level;
    c.dt = cfg.dt / static_cast<double>(1 << level);
    c.stride = 0;
    const auto [u0, rho0] = initial_data(c);
    const SolverConfig sc = solver_config(c);
    double conservation = 0.0;
    const LagrangianState fin = integrate_observed(
        u0, rho0, c.b, sc, [&](const LagrangianState& s) { conservation = std::max(conservation, diagnose(s).conservation_error); });
    const auto eul = euler_integrate(u0, rho0, c.b, sc);
    const EulerState lag = reconstruct(fin);
    const double sup_u = max_abs_difference(lag.u, eul.back().u);
    ordered_json row{{"n_points", c.n_points},
                     {"dt", sc.step_size()},
                     {"sup_u", sup_u},
                     {"conservation_error", conservation},
                     {"euler_mass_drift", eul.back().rho.integral() - eul.front().rho.integral()},
                     {"euler_energy_drift",
                      two_component_energy(eul.back().u, eul.back().rho) - two_component_energy(eul.front().u, eul.front().rho)}};
    row["ratio"] = previous ? ordered_json(*previous / sup_u) : ordered_json(nullptr);
    previous = sup_u;
    log << "n_points = " << c.n_points << "  dt = " << sc.step_size() << "  sup|u_L - u_E| = " << sup_u << "\n";
    rows.push_back(std::move(row));
  }
  detail::write_json(out / "convergence.json", {{"levels", rows}});
  return {{"convergence.json"}, std::nullopt, {}};
}

Outcome dispatch(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  switch (cfg.command) {
    case Command::SolveLagrangian: return solve_lagrangian(cfg, out, log);
    case Command::SolveEuler: return solve_euler(cfg, out, log);
    case Command::Compare: return compare(cfg, out, log);
    case Command::Probe: return probe(cfg, out, log);
    case Command::ScaleCheck: return scale_check(cfg, out, log);
    case Command::Transversality: return transversality(cfg, out, log);
    case Command::Convergence: return convergence(cfg, out, log);
  }
  throw Error(ErrorCategory::Config, "unknown command");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
  const fs::path out = cfg.output_dir;
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    detail::ensure_directory(out);
    outcome = dispatch(cfg, out, log);
  } catch (const Error& e) {
    outcome.failure = e.category();
    outcome.message = e.what();
    log << "error [" << to_string(e.category()) << "]: " << e.what() << "\n";
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const int code = outcome.failure ? exit_code(*outcome.failure) : 0;

  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : to_key_values(cfg)) config[k] = v;
  ordered_json manifest{{"version", kVersion},
                        {"command", std::string(to_string(cfg.command))},
                        {"config", config},
                        {"outputs", outcome.outputs},
                        {"status",
                         {{"exit_code", code},
                          {"category", outcome.failure ? std::string(to_string(*outcome.failure)) : "ok"},
                          {"message", outcome.message}}},
                        {"timing", {{"wall_seconds", seconds}}}};
  try {
    detail::ensure_directory(out);
    detail::write_json(out / "manifest.json", manifest);
  } catch (const Error& e) {
    log << "error [" << to_string(e.category()) << "]: " << e.what() << "\n";
    return exit_code(e.category());
  }
  return code;
}

}  // namespace bfamily
