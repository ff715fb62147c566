#include "bfamily/probe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "bfamily/errors.hpp"
#include "bfamily/presets.hpp"

namespace bfamily {

double separation(const Interval& a, const Interval& b) {
  return std::max(0.0, std::max(a.lo, b.lo) - std::min(a.hi, b.hi));
}

std::optional<Interval> numerical_support(const ScalarField& f, double rel) {
  const double threshold = rel * f.max_abs();
  if (!(f.max_abs() > 0.0)) return std::nullopt;
  std::size_t first = f.size();
  std::size_t last = 0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (std::abs(f[j]) > threshold) {
      first = std::min(first, j);
      last = j;
    }
  }
  return Interval{f.grid().x(first), f.grid().x(last)};
}

void ProbeSpec::check() const {
  require_same_grid(base_u, base_rho, "probe spec");
  require_same_grid(base_u, w1, "probe spec");
  cfg.check();
  const Grid& g = base_u.grid();
  const double L = g.length();
  if (!(radius > 0.0)) throw Error(ErrorCategory::Config, "probe radius must be positive");
  if (n_list.empty()) throw Error(ErrorCategory::Config, "probe n_list is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] <= 0 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw Error(ErrorCategory::Config, "probe n_list must be positive and strictly increasing");
    }
  }
  if (!(a_star >= 0.0 && a_star < L)) throw Error(ErrorCategory::Config, "a_star outside the domain");
  for (const ScalarField* f : {&base_u, &base_rho, &w1}) {
    if (!f->is_finite()) throw Error(ErrorCategory::Config, "probe fields must be finite");
    if (const auto supp = numerical_support(*f); supp && (supp->lo < 5.0 || supp->hi > L - 5.0)) {
      throw Error(ErrorCategory::Config, "probe field support within 5 of the periodic seam");
    }
  }
  if (const auto supp = numerical_support(base_rho)) {
    const double dist = std::max({0.0, supp->lo - a_star, a_star - supp->hi});
    if (dist < 2.0) throw Error(ErrorCategory::Config, "base density support within 2 of a_star");
  }
  if (!(std::abs(evaluate(w1, a_star)) > 1e-12 * w1.max_abs())) {
    throw Error(ErrorCategory::Config, "w1 vanishes at a_star");
  }
}

ProbeSpec default_probe_spec(const Grid& g) {
  SolverConfig cfg;
  cfg.dt = 2.5e-4;
  cfg.t_final = 1.0;
  return ProbeSpec{
      .base_u = ScalarField::from_function(g, [](double x) { return 0.1 * smooth_bump((x - 12.0) / 4.0); }),
      .base_rho = ScalarField::from_function(g, [](double x) { return 0.01 * smooth_bump((x - 7.5) / 2.0); }),
      .w1 = ScalarField::from_function(
          g, [](double x) { return 24.0 * smooth_step((x - 5.0) / 6.0) * smooth_step((35.0 - x) / 21.0); }),
      .a_star = 12.0,
      .radius = 0.1,
      .n_list = {4, 8, 16, 32},
      .b = 2.0,
      .s = SobolevIndex(2.0),
      .cfg = cfg,
  };
}

std::vector<TransversalitySample> measure_transversality(const ScalarField& base_u, const ScalarField& base_rho,
                                                         const ScalarField& w1, double a_star, double b,
                                                         const SolverConfig& cfg, const std::vector<double>& t_grid) {
  require_same_grid(base_u, base_rho, "measure_transversality");
  require_same_grid(base_u, w1, "measure_transversality");
  const Direction w{w1, ScalarField(w1.grid())};
  std::vector<TransversalitySample> out;
  for (const double t : t_grid) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCategory::InvalidArgument, "transversality t outside [0, 1]");
    TransversalitySample sample{t, std::nullopt, std::nullopt, {}};
    try {
      const ScalarField d = directional_derivative_psi(t * base_u, t * base_rho, w, b, cfg);
      sample.value = evaluate(d, a_star);
    } catch (const Error& e) {
      sample.failure = e.category();
      sample.error = std::string(to_string(e.category())) + ": " + e.what();
    }
    out.push_back(std::move(sample));
  }
  return out;
}

ScalarField build_hump(int n, double m, double w1_norm, double radius, double a_star, double L_lip, SobolevIndex s,
                       const Grid& grid) {
  if (n <= 0 || !(m > 0.0) || !(w1_norm > 0.0) || !(radius > 0.0) || !(L_lip > 0.0)) {
    throw Error(ErrorCategory::InvalidArgument, "build_hump needs positive n, m, |w1|, R and L");
  }
  const double r = m * w1_norm / (8.0 * n);
  const double half = r / L_lip;
  if (half < 4.0 * grid.spacing()) {
    throw Error(ErrorCategory::UnderResolution,
                "hump for n = " + std::to_string(n) + " has half-width " + std::to_string(half) +
                    ", under 4 grid spacings; increase n_points");
  }
  ScalarField hump = ScalarField::from_function(grid, [&](double x) { return smooth_bump((x - a_star) / half); });
  const double norm = sobolev_norm(hump, s.value() - 1.0);
  hump *= 0.25 * radius / norm;
  return hump;
}

namespace {

Interval image(const Diffeo& phi, const Interval& I) { return {evaluate(phi, I.lo), evaluate(phi, I.hi)}; }

ProbeMember run_member(const ProbeSpec& spec, const ProbeReport& base, int n, const SolverConfig& cfg) {
  const Grid& g = spec.base_u.grid();
  const double s = spec.s.value();
  ProbeMember out;
  out.n = n;
  const ScalarField u0 = spec.base_u;
  const ScalarField u0_tilde = spec.base_u + (1.0 / n) * spec.w1;
  out.initial_u_distance = sobolev_norm(u0_tilde - u0, s);
  out.expected_initial_u_distance = base.w1_norm / n;
  out.initial_rho_distance = 0.0;
  out.r_n = base.m * base.w1_norm / (8.0 * n);
  try {
    const ScalarField hump = build_hump(n, base.m, base.w1_norm, spec.radius, spec.a_star, base.L_lip, spec.s, g);
    out.hump_norm = sobolev_norm(hump, s - 1.0);
    const double r2 = spec.radius * spec.radius;
    const double hump2 = out.hump_norm * out.hump_norm;
    out.in_ball = hump2 < r2 && out.initial_u_distance * out.initial_u_distance + hump2 < r2;

    const ScalarField rho0 = spec.base_rho + hump;
    const LagrangianState st = integrate_final(u0, rho0, spec.b, cfg);
    const LagrangianState st_tilde = integrate_final(u0_tilde, rho0, spec.b, cfg);
    const EulerState e = reconstruct(st);
    const EulerState e_tilde = reconstruct(st_tilde);
    out.final_u_distance = sobolev_norm(e.u - e_tilde.u, s);
    out.final_rho_distance = sobolev_norm(e.rho - e_tilde.rho, s - 1.0);

    out.hump_center = evaluate(st.phi, spec.a_star);
    out.hump_center_tilde = evaluate(st_tilde.phi, spec.a_star);
    out.hump_center_gap = std::abs(out.hump_center_tilde - out.hump_center);
    out.n_times_gap = n * out.hump_center_gap;

    const double half = out.r_n / base.L_lip;
    const Interval hump_support{spec.a_star - half, spec.a_star + half};
    out.B = image(st.phi, hump_support);
    out.D = image(st_tilde.phi, hump_support);
    out.hump_supports_disjoint = separation(out.B, out.D) > 0.0;
    const double max_width = std::max(out.B.width(), out.D.width());
    out.hump_width_bounded = out.B.width() <= 2.0 * out.r_n * 1.1;
    if (const auto supp = numerical_support(spec.base_rho)) {
      out.A = image(st.phi, *supp);
      out.C = image(st_tilde.phi, *supp);
      const double needed = 1.0 / base.L_lip - 2.0 * max_width;
      out.base_hump_separated = separation(out.A, out.B) >= needed && separation(out.C, out.D) >= needed;
    } else {
      out.base_hump_separated = true;
    }

    const EulerState moved = reconstruct(LagrangianState{st.phi, st.v, hump, spec.b, st.t});
    out.pushforward_ratio = sobolev_norm(moved.rho, s - 1.0) / out.hump_norm;
    out.ok = true;
  } catch (const Error& err) {
    out.ok = false;
    out.failure = err.category();
    out.error = std::string(to_string(err.category())) + ": " + err.what();
  }
  return out;
}

double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

ProbeReport run_nonuniformity_probe(const ProbeSpec& spec, unsigned workers) {
  spec.check();
  SolverConfig cfg = spec.cfg;
  cfg.t_final = 1.0;
  cfg.stride = 0;
  const Grid& g = spec.base_u.grid();

  ProbeReport report;
  const Direction w{spec.w1, ScalarField(g)};
  report.transversality =
      evaluate(directional_derivative_psi(spec.base_u, spec.base_rho, w, spec.b, cfg), spec.a_star);
  report.w1_norm = sobolev_norm(spec.w1, spec.s);
  report.m = std::abs(report.transversality) / (2.0 * report.w1_norm);
  if (!(report.m > 0.0)) throw Error(ErrorCategory::Config, "transversality vanishes at a_star");

  report.base_min_jacobian = std::numeric_limits<double>::infinity();
  integrate_observed(spec.base_u, spec.base_rho, spec.b, cfg, [&](const LagrangianState& st) {
    report.base_min_jacobian = std::min(report.base_min_jacobian, st.phi.min_jacobian());
    report.base_max_jacobian = std::max(report.base_max_jacobian, st.phi.max_jacobian());
  });
  report.L_lip = std::max(report.base_max_jacobian, 1.0 / report.base_min_jacobian);

  report.members.resize(spec.n_list.size());
  const unsigned threads = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(spec.n_list.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < spec.n_list.size(); i = next++) {
      report.members[i] = run_member(spec, report, spec.n_list[i], cfg);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }

  const auto& ms = report.members;
  report.all_members_ok = std::all_of(ms.begin(), ms.end(), [](const ProbeMember& m) { return m.ok; });
  report.initial_distances_exact = std::all_of(ms.begin(), ms.end(), [](const ProbeMember& m) {
    return std::abs(m.initial_u_distance - m.expected_initial_u_distance) <= 1e-12 * m.expected_initial_u_distance;
  });
  const double n_ratio = static_cast<double>(ms.back().n) / ms.front().n;
  report.initial_distance_falls =
      ms.front().initial_u_distance >= n_ratio * (1.0 - 1e-12) * ms.back().initial_u_distance;

  bool gap_ok = false;
  for (const ProbeMember& m : ms) {
    if (m.n < 8) continue;
    const double ratio = m.n_times_gap / std::abs(report.transversality);
    gap_ok = m.ok && ratio >= 0.5 && ratio <= 2.0;
    if (!gap_ok) break;
  }
  report.gap_tracks_transversality = gap_ok;

  if (report.all_members_ok) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    std::vector<double> xs, ys;
    for (const ProbeMember& m : ms) {
      lo = std::min(lo, m.final_rho_distance);
      hi = std::max(hi, m.final_rho_distance);
      xs.push_back(m.n);
      ys.push_back(m.final_rho_distance);
    }
    report.rho_distance_floor = hi > 0.0 && lo >= 0.25 * hi;
    if (xs.size() >= 2 && lo > 0.0) {
      report.rho_distance_slope = log_slope(xs, ys);
      report.rho_slope_ok = report.rho_distance_slope >= -0.2;
    }
  }
  report.supports_ok = report.all_members_ok && std::all_of(ms.begin(), ms.end(), [](const ProbeMember& m) {
                         return m.hump_supports_disjoint && m.base_hump_separated;
                       });
  return report;
}

std::vector<ScaleCheck> check_scale_invariance(const ScalarField& u0, const ScalarField& rho0, double b,
                                               SobolevIndex s, const std::vector<double>& T_list,
                                               const SolverConfig& cfg) {
  std::vector<ScaleCheck> out;
  for (const double T : T_list) {
    ScaleCheck c;
    c.T = T;
    try {
      const EulerState direct = solution_map(T, u0, rho0, b, cfg, SolutionMapRoute::Direct);
      const EulerState scaled = solution_map(T, u0, rho0, b, cfg, SolutionMapRoute::Scaled);
      c.u_discrepancy = sobolev_norm(direct.u - scaled.u, s.value());
      c.rho_discrepancy = sobolev_norm(direct.rho - scaled.rho, s.value() - 1.0);
      const double scale = std::max(sobolev_norm(direct.u, s.value()), sobolev_norm(direct.rho, s.value() - 1.0));
      const double worst = std::max(c.u_discrepancy, c.rho_discrepancy);
      c.relative = scale > 0.0 ? worst / scale : worst;
      c.ok = true;
    } catch (const Error& e) {
      c.failure = e.category();
      c.error = std::string(to_string(e.category())) + ": " + e.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace bfamily
