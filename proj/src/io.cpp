#include "bfamily/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bfamily/errors.hpp"
#include "bfamily/flow.hpp"
#include "json_io.hpp"

namespace bfamily {

namespace fs = std::filesystem;

namespace detail {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCategory::IO, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out.flush()) throw Error(ErrorCategory::IO, "write to '" + path.string() + "' failed");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::IO, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const fs::path& path, const ordered_json& j) { write_text(path, j.dump(2) + "\n"); }

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorCategory::IO, "cannot create directory '" + dir.string() + "'");
  }
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

ordered_json to_json(const Interval& I) { return ordered_json::array({I.lo, I.hi}); }

}  // namespace

ordered_json to_json(const ProbeReport& r) {
  ordered_json members = ordered_json::array();
  for (const ProbeMember& m : r.members) {
    members.push_back({
        {"n", m.n},
        {"ok", m.ok},
        {"error", m.error},
        {"initial_u_distance", m.initial_u_distance},
        {"expected_initial_u_distance", m.expected_initial_u_distance},
        {"initial_rho_distance", m.initial_rho_distance},
        {"final_u_distance", m.final_u_distance},
        {"final_rho_distance", m.final_rho_distance},
        {"r_n", m.r_n},
        {"hump_norm", m.hump_norm},
        {"hump_center", m.hump_center},
        {"hump_center_tilde", m.hump_center_tilde},
        {"hump_center_gap", m.hump_center_gap},
        {"n_times_gap", m.n_times_gap},
        {"A", to_json(m.A)},
        {"B", to_json(m.B)},
        {"C", to_json(m.C)},
        {"D", to_json(m.D)},
        {"hump_supports_disjoint", m.hump_supports_disjoint},
        {"base_hump_separated", m.base_hump_separated},
        {"hump_width_bounded", m.hump_width_bounded},
        {"pushforward_ratio", m.pushforward_ratio},
        {"in_ball", m.in_ball},
    });
  }
  return {
      {"transversality", r.transversality},
      {"w1_norm", r.w1_norm},
      {"m", r.m},
      {"L_lip", r.L_lip},
      {"base_min_jacobian", r.base_min_jacobian},
      {"base_max_jacobian", r.base_max_jacobian},
      {"members", members},
      {"flags",
       {
           {"initial_distances_exact", r.initial_distances_exact},
           {"gap_tracks_transversality", r.gap_tracks_transversality},
           {"rho_distance_floor", r.rho_distance_floor},
           {"initial_distance_falls", r.initial_distance_falls},
           {"rho_distance_slope", r.rho_distance_slope},
           {"rho_slope_ok", r.rho_slope_ok},
           {"supports_ok", r.supports_ok},
           {"all_members_ok", r.all_members_ok},
       }},
  };
}

ordered_json to_json(const ScaleCheck& c) {
  return {{"T", c.T},
          {"ok", c.ok},
          {"error", c.error},
          {"u_discrepancy", c.u_discrepancy},
          {"rho_discrepancy", c.rho_discrepancy},
          {"relative", c.relative}};
}

ordered_json to_json(const TransversalitySample& s) {
  ordered_json j{{"t", s.t}};
  j["value"] = s.value ? ordered_json(*s.value) : ordered_json(nullptr);
  j["error"] = s.error;
  return j;
}

}  // namespace detail

using detail::ordered_json;

void write_field_csv(const fs::path& path, const ScalarField& f) {
  std::string text = "x,value\n";
  text.reserve(48 * (f.size() + 1));
  for (std::size_t j = 0; j < f.size(); ++j) {
    text += detail::format_double(f.grid().x(j));
    text += ',';
    text += detail::format_double(f[j]);
    text += '\n';
  }
  detail::write_text(path, text);
}

ScalarField read_field_csv(const fs::path& path, const Grid& grid) {
  const std::string text = detail::read_text(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || (line != "x,value" && line != "x,value\r")) {
    throw Error(ErrorCategory::IO, "'" + path.string() + "': expected header x,value");
  }
  std::vector<double> values;
  values.reserve(grid.size());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    const auto comma = line.find(',');
    double x = 0.0;
    double v = 0.0;
    const char* end = line.data() + line.size();
    const auto rx = std::from_chars(line.data(), line.data() + (comma == std::string::npos ? 0 : comma), x);
    const auto rv = comma == std::string::npos ? std::from_chars_result{nullptr, std::errc::invalid_argument}
                                               : std::from_chars(line.data() + comma + 1, end, v);
    if (rx.ec != std::errc() || rv.ec != std::errc() || rv.ptr != end) {
      throw Error(ErrorCategory::IO, "'" + path.string() + "': malformed row " + std::to_string(row));
    }
    if (values.size() >= grid.size() || std::abs(x - grid.x(values.size())) > 1e-9 * grid.length()) {
      throw Error(ErrorCategory::IO, "'" + path.string() + "': row " + std::to_string(row) +
                                         " does not match the grid (n_points = " + std::to_string(grid.size()) +
                                         ", length = " + detail::format_double(grid.length()) + ")");
    }
    if (!std::isfinite(v)) {
      throw Error(ErrorCategory::IO, "'" + path.string() + "': non-finite value in row " + std::to_string(row));
    }
    values.push_back(v);
  }
  if (values.size() != grid.size()) {
    throw Error(ErrorCategory::IO, "'" + path.string() + "': expected " + std::to_string(grid.size()) + " rows, got " +
                                       std::to_string(values.size()));
  }
  return ScalarField(grid, std::move(values));
}

namespace {

fs::path sidecar(const fs::path& csv_path) {
  fs::path p = csv_path;
  return p.replace_extension(".json");
}

}  // namespace

void write_diffeo(const fs::path& csv_path, const Diffeo& phi) {
  write_field_csv(csv_path, phi.displacement());
  detail::write_json(sidecar(csv_path), {{"length", phi.grid().length()},
                                         {"n_points", phi.grid().size()},
                                         {"min_phi_x", phi.min_jacobian()}});
}

Diffeo read_diffeo(const fs::path& csv_path) {
  ordered_json meta;
  try {
    meta = ordered_json::parse(detail::read_text(sidecar(csv_path)));
    const Grid grid(meta.at("n_points").get<std::size_t>(), meta.at("length").get<double>());
    return Diffeo(read_field_csv(csv_path, grid));
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCategory::IO, "'" + sidecar(csv_path).string() + "': " + e.what());
  }
}

namespace {

std::string snapshot_name(std::size_t k, const char* field) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_%04zu_%s.csv", k, field);
  return buf;
}

ordered_json run_header(double b, const SolverConfig& cfg, const Grid& g) {
  return {{"b", b},
          {"dt", cfg.step_size()},
          {"requested_dt", cfg.dt},
          {"t_final", cfg.t_final},
          {"steps", cfg.steps()},
          {"grid", {{"length", g.length()}, {"n_points", g.size()}}},
          {"stride", cfg.stride}};
}

}  // namespace

void write_lagrangian_trajectory(const fs::path& dir, const Trajectory& traj, double b, const SolverConfig& cfg) {
  detail::ensure_directory(dir);
  const Grid& g = traj.final().phi.grid();
  ordered_json manifest = run_header(b, cfg, g);
  manifest["solver"] = "lagrangian";
  ordered_json snaps = ordered_json::array();
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const LagrangianState& s = traj.snapshots[k];
    const EulerState e = reconstruct(s);
    const FlowDiagnostics d = diagnose(s);
    write_diffeo(dir / snapshot_name(k, "phi"), s.phi);
    write_field_csv(dir / snapshot_name(k, "v"), s.v);
    write_field_csv(dir / snapshot_name(k, "u"), e.u);
    write_field_csv(dir / snapshot_name(k, "rho"), e.rho);
    snaps.push_back({{"index", k},
                     {"t", s.t},
                     {"files",
                      {snapshot_name(k, "phi"), snapshot_name(k, "v"), snapshot_name(k, "u"), snapshot_name(k, "rho")}},
                     {"diagnostics",
                      {{"min_phi_x", d.min_jacobian},
                       {"max_phi_x", d.max_jacobian},
                       {"conservation_error", d.conservation_error},
                       {"mass", d.mass},
                       {"energy", d.energy}}}});
  }
  manifest["snapshots"] = std::move(snaps);
  detail::write_json(dir / "trajectory.json", manifest);
}

void write_euler_trajectory(const fs::path& dir, const std::vector<EulerState>& snapshots, double b,
                            const SolverConfig& cfg) {
  if (snapshots.empty()) throw Error(ErrorCategory::InvalidArgument, "no snapshots to write");
  detail::ensure_directory(dir);
  ordered_json manifest = run_header(b, cfg, snapshots.front().u.grid());
  manifest["solver"] = "euler";
  ordered_json snaps = ordered_json::array();
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    const EulerState& s = snapshots[k];
    write_field_csv(dir / snapshot_name(k, "u"), s.u);
    write_field_csv(dir / snapshot_name(k, "rho"), s.rho);
    snaps.push_back({{"index", k},
                     {"t", s.t},
                     {"files", {snapshot_name(k, "u"), snapshot_name(k, "rho")}},
                     {"diagnostics", {{"mass", s.rho.integral()}, {"energy", two_component_energy(s.u, s.rho)}}}});
  }
  manifest["snapshots"] = std::move(snaps);
  detail::write_json(dir / "trajectory.json", manifest);
}

void write_probe_report(const fs::path& dir, const ProbeReport& report) {
  detail::ensure_directory(dir);
  detail::write_json(dir / "probe_report.json", detail::to_json(report));
  std::string csv = "n,init_dist_u,final_dist_u,final_dist_rho,hump_gap,n_times_gap,supports\n";
  auto interval = [](const Interval& I) {
    return "[" + detail::format_double(I.lo) + ";" + detail::format_double(I.hi) + "]";
  };
  for (const ProbeMember& m : report.members) {
    csv += std::to_string(m.n) + "," + detail::format_double(m.initial_u_distance) + ",";
    if (m.ok) {
      csv += detail::format_double(m.final_u_distance) + "," + detail::format_double(m.final_rho_distance) + "," +
             detail::format_double(m.hump_center_gap) + "," + detail::format_double(m.n_times_gap) + ",B=" +
             interval(m.B) + " D=" + interval(m.D) + "\n";
    } else {
      csv += ",,,,failed\n";
    }
  }
  detail::write_text(dir / "probe_table.csv", csv);
}

}  // namespace bfamily
