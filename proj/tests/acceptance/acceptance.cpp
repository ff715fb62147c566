// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bfamily/diffeo.hpp"
#include "bfamily/errors.hpp"
#include "bfamily/euler.hpp"
#include "bfamily/flow.hpp"
#include "bfamily/presets.hpp"
#include "bfamily/probe.hpp"
#include "bfamily/spectral.hpp"

using namespace bfamily;
namespace fs = std::filesystem;

namespace {

int failures = 0;
std::ofstream results("acceptance_results.txt");

void report(int id, bool pass, const std::string& detail, double seconds) {
  char head[64];
  std::snprintf(head, sizeof head, "criterion %2d: %s  ", id, pass ? "PASS" : "FAIL");
  char tail[32];
  std::snprintf(tail, sizeof tail, "  [%.1f s]", seconds);
  const std::string line = head + detail + tail;
  std::printf("%s\n", line.c_str());
  std::fflush(stdout);
  results << line << std::endl;
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void criterion(int id, const std::function<std::pair<bool, std::string>()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    std::tie(pass, detail) = body();
  } catch (const Error& e) {
    detail = std::string("error [") + std::string(to_string(e.category())) + "]: " + e.what();
  } catch (const std::exception& e) {
    detail = std::string("error: ") + e.what();
  }
  report(id, pass, detail, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

SolverConfig config(double dt, double t_final) {
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.t_final = t_final;
  return cfg;
}

double relative_sup(const ScalarField& a, const ScalarField& b) { return max_abs_difference(a, b) / b.max_abs(); }

// Smooth diffeomorphism from seeded low modes, scaled so min phi_x equals `floor`.
Diffeo seeded_diffeo(const Grid& g, std::mt19937_64& rng, double floor) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(5), b(5);
  for (int k = 0; k < 5; ++k) {
    a[k] = u(rng) / ((k + 1) * (k + 1));
    b[k] = u(rng) / ((k + 1) * (k + 1));
  }
  const ScalarField d = ScalarField::from_function(g, [&](double x) {
    double s = 0.0;
    for (int k = 0; k < 5; ++k) {
      const double xi = 2.0 * std::numbers::pi * (k + 1) / g.length();
      s += a[k] * std::cos(xi * x) + b[k] * std::sin(xi * x);
    }
    return s;
  });
  const double lowest = Diffeo(d).min_jacobian() - 1.0;
  return Diffeo((1.0 - floor) / -lowest * d);
}

struct CrossRun {
  double sup_u;
  double conservation;
  double mass_drift_rate;
};

CrossRun cross_run(std::size_t n, double dt) {
  const Grid g(n, 40.0);
  const InitialData d = make_preset("bump-pair", g);
  const SolverConfig cfg = config(dt, 1.0);
  double conservation = 0.0;
  const LagrangianState fin = integrate_observed(d.u0, d.rho0, 2.0, cfg, [&](const LagrangianState& s) {
    conservation = std::max(conservation, diagnose(s).conservation_error);
  });
  const auto eul = euler_integrate(d.u0, d.rho0, 2.0, cfg);
  const EulerState lag = reconstruct(fin);
  return {max_abs_difference(lag.u, eul.back().u), conservation,
          std::abs(eul.back().rho.integral() - eul.front().rho.integral()) / cfg.t_final};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  criterion(1, [] {
    const double L = 40.0;
    const Grid g(2048, L);
    double worst = 0.0;
    for (std::size_t k : {1u, 17u, 200u}) {
      const double xi = g.wavenumber(k);
      // Phase reduced exactly in integers so the samples carry no argument rounding.
      ScalarField c(g), s(g);
      for (std::size_t j = 0; j < g.size(); ++j) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(k * j % g.size()) / g.size();
        c[j] = 0.9 * std::cos(phase);
        s[j] = 0.9 * std::sin(phase);
      }
      worst = std::max(worst, relative_sup(helmholtz_inverse(c), (1.0 / (1.0 + xi * xi)) * c));
      worst = std::max(worst, relative_sup(derivative(c, 1), -xi * s));
      worst = std::max(worst, relative_sup(derivative(s, 1), xi * c));
      for (double sv : {0.0, 1.0, 2.0, 2.5}) {
        const double expected = 0.9 * std::sqrt(L / 2.0) * std::pow(1.0 + xi * xi, sv / 2.0);
        worst = std::max(worst, std::abs(sobolev_norm(c, sv) - expected) / expected);
      }
    }
    return std::pair{worst <= 1e-12, fmt("max relative error %.2e (tol 1e-12)", worst)};
  });

  criterion(2, [] {
    const Grid g(2048, 40.0);
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> floor(0.2, 0.9);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    double round_trip = 0.0;
    double conjugation = 0.0;
    for (int c = 0; c < 20; ++c) {
      const Diffeo phi = seeded_diffeo(g, rng, floor(rng));
      std::vector<double> a(8);
      for (double& v : a) v = coef(rng);
      const ScalarField f = ScalarField::from_function(g, [&](double x) {
        double s = 0.0;
        for (int k = 0; k < 8; ++k) s += a[k] / (k + 1) * std::sin(2.0 * std::numbers::pi * (k + 1) * x / 40.0 + k);
        return s;
      });
      const Diffeo psi = invert(phi);
      round_trip = std::max(round_trip, max_abs_difference(compose(compose(f, psi), phi), f));
      const ScalarField long_way = compose(derivative(compose(f, psi), 1), phi);
      conjugation = std::max(conjugation, max_abs_difference(conjugated_derivative(f, phi), long_way));
    }
    return std::pair{round_trip <= 1e-7 && conjugation <= 1e-7,
                     fmt("round trip %.2e, conjugated derivative %.2e over 20 cases (tol 1e-7)", round_trip,
                         conjugation)};
  });

  CrossRun coarse{}, fine{};
  criterion(3, [&] {
    coarse = cross_run(2048, 5e-4);
    fine = cross_run(4096, 2.5e-4);
    const double ratio = coarse.sup_u / fine.sup_u;
    return std::pair{coarse.sup_u <= 1e-5 && ratio >= 4.0,
                     fmt("sup|u_L - u_E| = %.2e at 2048 (tol 1e-5), %.2e at 4096, ratio %.1f (need >= 4)",
                         coarse.sup_u, fine.sup_u, ratio)};
  });

  criterion(4, [&] {
    const bool ok = coarse.conservation <= 1e-6 && fine.conservation < coarse.conservation &&
                    coarse.mass_drift_rate <= 1e-10;
    return std::pair{ok, fmt("conservation %.2e at 2048 (tol 1e-6), %.2e at 4096; Euler mass drift %.2e per unit "
                             "time (tol 1e-10)",
                             coarse.conservation, fine.conservation, coarse.mass_drift_rate)};
  });

  criterion(5, [] {
    const Grid g(1024, 40.0);
    const InitialData d = make_preset("steep-pair", g);
    const Diffeo ref = psi(d.u0, d.rho0, 2.0, config(6.25e-5, 1.0));
    std::vector<double> x, y;
    std::string errs;
    for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) {
      const double e = max_abs_difference(psi(d.u0, d.rho0, 2.0, config(dt, 1.0)).displacement(), ref.displacement());
      x.push_back(std::log(dt));
      y.push_back(std::log(e));
      errs += fmt(" %.2e", e);
    }
    const double n = 4.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < 4; ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return std::pair{slope >= 3.7 && slope <= 4.3,
                     fmt("slope %.3f (need [3.7, 4.3]); errors%s", slope, errs.c_str())};
  });

  criterion(6, [] {
    const Grid g(2048, 40.0);
    const InitialData d = make_preset("bump-pair", g);
    const auto checks = check_scale_invariance(d.u0, d.rho0, 2.0, SobolevIndex(2.0), {0.5, 2.0}, config(5e-4, 1.0));
    bool ok = true;
    std::string detail;
    for (const ScaleCheck& c : checks) {
      ok = ok && c.ok && c.relative <= 1e-10;
      detail += c.ok ? fmt("T=%g: %.2e ", c.T, c.relative) : fmt("T=%g: %s ", c.T, c.error.c_str());
    }
    return std::pair{ok, detail + "(tol 1e-10 relative)"};
  });

  criterion(7, [] {
    const Grid g(2048, 40.0);
    const Direction w{ScalarField::from_function(g, [](double x) { return std::exp(-(x - 20.0) * (x - 20.0) / 9.0); }),
                      ScalarField::from_function(g, [](double x) { return 0.5 * smooth_bump((x - 14.0) / 3.0); })};
    const ScalarField d = directional_derivative_psi(ScalarField(g), ScalarField(g), w, 2.0, config(5e-4, 1.0));
    const double err = sobolev_norm(d - w.w1, 2.0);
    return std::pair{err <= 1e-6, fmt("|dPsi(v) - v1|_H2 = %.2e (tol 1e-6)", err)};
  });

  criterion(8, [] {
    const ProbeSpec spec = default_probe_spec();
    const ProbeReport r = run_nonuniformity_probe(spec, 1);
    std::string detail = fmt("dPsi(w)(a) = %.4f, m = %.4f, L = %.4f;", r.transversality, r.m, r.L_lip);
    double lo = 1e300, hi = 0.0;
    bool gap_ok = true;
    for (const ProbeMember& m : r.members) {
      if (!m.ok) {
        detail += fmt(" n=%d failed (%s);", m.n, m.error.c_str());
        continue;
      }
      const double ratio = m.n_times_gap / std::abs(r.transversality);
      if (m.n >= 8) gap_ok = gap_ok && ratio >= 0.5 && ratio <= 2.0;
      lo = std::min(lo, m.final_rho_distance);
      hi = std::max(hi, m.final_rho_distance);
      detail += fmt(" n=%d init %.4g final_rho %.4g n*gap/|dPsi| %.3f;", m.n, m.initial_u_distance,
                    m.final_rho_distance, ratio);
    }
    const double fall = r.members.front().initial_u_distance / r.members.back().initial_u_distance;
    const bool a = r.initial_distances_exact;
    const bool b = gap_ok && r.gap_tracks_transversality;
    const bool c = r.all_members_ok && lo >= 0.25 * hi && fall >= 8.0 * (1.0 - 1e-12);
    detail += fmt(" (a) %s (b) %s (c) min/max %.3f, initial fall %.3f", a ? "ok" : "no", b ? "ok" : "no",
                  hi > 0 ? lo / hi : 0.0, fall);
    return std::pair{a && b && c, detail};
  });

  criterion(9, [] {
    const ProbeSpec spec = default_probe_spec();
    const auto samples = measure_transversality(spec.base_u, spec.base_rho, spec.w1, spec.a_star, spec.b, spec.cfg,
                                                {0.0, 0.25, 0.5, 0.75, 1.0});
    const double w1a = evaluate(spec.w1, spec.a_star);
    bool ok = samples.size() == 5 && samples[0].value && std::abs(*samples[0].value - w1a) <= 1e-6;
    std::string detail = fmt("w1(a) = %.10f;", w1a);
    for (const auto& s : samples) {
      const bool finite = s.value && std::isfinite(*s.value);
      ok = ok && (finite || (!s.value && s.failure));
      detail += s.value ? fmt(" t=%g: %.10f", s.t, *s.value) : fmt(" t=%g: %s", s.t, s.error.c_str());
    }
    return std::pair{ok, detail};
  });

  criterion(10, [] {
    const fs::path root = fs::temp_directory_path() / "bfamily_acceptance_determinism";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string cli = BFAMILY_CLI;
    struct Case {
      std::string name, args, report;
    };
    const std::vector<Case> cases{
        {"compare", "compare --n_points 2048 --dt 5e-4 --stride 500", "compare.json"},
        {"scale", "scale-check --n_points 1024 --dt 1e-3 --T_list 0.5,0.7", "scale_check.json"},
        {"probe", "probe --n_points 1024 --dt 2e-3 --n_list 4,8 --workers 2", "probe_table.csv"},
    };
    bool ok = true;
    std::string detail;
    for (const Case& c : cases) {
      const fs::path first = root / (c.name + "_1");
      const fs::path second = root / (c.name + "_2");
      const int r1 = shell(cli + " " + c.args + " --output_dir " + first.string() + " > /dev/null");
      const int r2 = shell(cli + " --config " + (first / "manifest.json").string() + " --output_dir " +
                           second.string() + " > /dev/null");
      const std::string a = slurp(first / c.report);
      const bool same = r1 == 0 && r2 == 0 && !a.empty() && a == slurp(second / c.report);
      ok = ok && same;
      detail += fmt("%s %s; ", c.report.c_str(), same ? "identical" : "DIFFERS");
    }
    fs::remove_all(root);
    return std::pair{ok, detail};
  });

  std::printf("%d criteria failed\n", failures);
  results << failures << " criteria failed\n";
  return failures == 0 ? 0 : 1;
}
