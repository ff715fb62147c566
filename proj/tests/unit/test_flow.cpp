#include <doctest.h>

#include "bfamily/errors.hpp"
#include "bfamily/euler.hpp"
#include "bfamily/flow.hpp"
#include "bfamily/presets.hpp"
#include "support.hpp"

using namespace bfamily;

namespace {

ScalarField bump(const Grid& g, double a, double c, double w = 1.0) {
  return ScalarField::from_function(g, [=](double x) { return a * std::exp(-(x - c) * (x - c) / (w * w)); });
}

SolverConfig config(double dt, double t_final) {
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.t_final = t_final;
  return cfg;
}

ScalarField roll(const ScalarField& f, std::size_t m) {
  ScalarField out(f.grid());
  for (std::size_t j = 0; j < f.size(); ++j) out[(j + m) % f.size()] = f[j];
  return out;
}

}  // namespace

TEST_CASE("solver config") {
  CHECK(config(0.3, 1.0).steps() == 3);
  CHECK(config(0.3, 1.0).step_size() == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(config(-1.0, 1.0).check(), Error);
  CHECK_THROWS_AS(config(2.0, 1.0).check(), Error);
}

TEST_CASE("F at the identity matches the Eulerian forcing") {
  const Grid g(512, 40.0);
  const ScalarField u = bump(g, 0.8, 18.0);
  const ScalarField rho = bump(g, 0.4, 22.0);
  for (double b : {2.0, 3.0, 0.5}) {
    const ScalarField F = rhs_F(LagrangianState{Diffeo::identity(g), u, rho, b, 0.0});
    const ScalarField ux = derivative(u, 1);
    const ScalarField uxx = derivative(u, 2);
    const ScalarField rx = derivative(rho, 1);
    ScalarField src(g);
    for (std::size_t j = 0; j < g.size(); ++j) src[j] = -b * u[j] * ux[j] + (b - 3.0) * ux[j] * uxx[j] + rho[j] * rx[j];
    CHECK(max_abs_difference(F, helmholtz_inverse(dealias(src))) <= 1e-13);
  }
}

TEST_CASE("F is zero on equilibria and translation equivariant") {
  const Grid g(256, 40.0);
  CHECK(rhs_F(LagrangianState::initial(ScalarField(g), ScalarField(g), 2.0)).max_abs() == 0.0);
  CHECK(rhs_F(LagrangianState{Diffeo::shift(g, 0.7), ScalarField(g, 1.5), ScalarField(g), 2.0, 0.0}).max_abs() <=
        1e-14);

  const ScalarField u = bump(g, 0.5, 18.0);
  const ScalarField rho = bump(g, 0.3, 21.0);
  const ScalarField d = 0.2 * bump(g, 1.0, 19.0, 2.0);
  const ScalarField F = rhs_F(LagrangianState{Diffeo(d), u, rho, 2.0, 0.0});
  const std::size_t m = 11;
  const ScalarField Fm = rhs_F(LagrangianState{Diffeo(roll(d, m)), roll(u, m), roll(rho, m), 2.0, 0.0});
  CHECK(max_abs_difference(Fm, roll(F, m)) <= 1e-12);
}

TEST_CASE("trivial trajectories") {
  const Grid g(128, 40.0);
  const auto rest = integrate_final(ScalarField(g), ScalarField(g), 2.0, config(0.05, 1.0));
  CHECK(rest.phi.displacement().max_abs() == 0.0);
  CHECK(rest.v.max_abs() == 0.0);

  const double c = 0.8;
  const auto moving = integrate_final(ScalarField(g, c), ScalarField(g), 2.0, config(0.05, 1.0));
  CHECK(max_abs_difference(moving.phi.displacement(), ScalarField(g, c)) <= 1e-12);
  CHECK(max_abs_difference(moving.v, ScalarField(g, c)) <= 1e-12);
}

TEST_CASE("snapshots follow the stride") {
  const Grid g(128, 40.0);
  SolverConfig cfg = config(0.1, 1.0);
  cfg.stride = 3;
  const Trajectory t = integrate(bump(g, 0.3, 20.0), ScalarField(g), 2.0, cfg);
  REQUIRE(t.snapshots.size() == 5);
  CHECK(t.snapshots[1].t == doctest::Approx(0.3));
  CHECK(t.final().t == 1.0);
  const EulerState e0 = reconstruct(t.snapshots.front());
  CHECK(max_abs_difference(e0.u, bump(g, 0.3, 20.0)) <= 1e-15);
}

TEST_CASE("breakdown is reported with its time") {
  const Grid g(256, 40.0);
  try {
    integrate_final(bump(g, 4.0, 18.0), bump(g, 2.0, 21.0), 2.0, config(2e-3, 1.0));
    FAIL("expected breakdown");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Breakdown);
    REQUIRE(e.time().has_value());
    CHECK(*e.time() > 0.3);
    CHECK(*e.time() < 0.6);
  }
}

TEST_CASE("Lagrangian and Eulerian solutions agree and converge together") {
  auto gap = [](std::size_t n, double dt) {
    const Grid g(n, 40.0);
    const InitialData d = make_preset("bump-pair", g);
    const SolverConfig cfg = config(dt, 0.5);
    const EulerState lag = reconstruct(integrate_final(d.u0, d.rho0, 2.0, cfg));
    const EulerState eul = euler_integrate(d.u0, d.rho0, 2.0, cfg).back();
    return std::pair{max_abs_difference(lag.u, eul.u), max_abs_difference(lag.rho, eul.rho)};
  };
  const auto [u1, r1] = gap(256, 4e-3);
  const auto [u2, r2] = gap(512, 2e-3);
  CHECK(u1 < 1e-2);
  CHECK(u2 * 4.0 <= u1);
  CHECK(r2 * 4.0 <= r1);
}

TEST_CASE("density transport invariants") {
  const Grid g(512, 40.0);
  const InitialData d = make_preset("bump-pair", g);
  SolverConfig cfg = config(2e-3, 0.5);
  cfg.stride = 50;
  const Trajectory t = integrate(d.u0, d.rho0, 2.0, cfg);
  const double mass0 = d.rho0.integral();
  for (const LagrangianState& s : t.snapshots) {
    const FlowDiagnostics diag = diagnose(s);
    CHECK(diag.conservation_error <= 1e-4);
    CHECK(diag.mass == doctest::Approx(mass0).epsilon(1e-4));
  }
}

TEST_CASE("time-one map reproduces intermediate times") {
  const Grid g(256, 40.0);
  const ScalarField u0 = bump(g, 0.6, 18.0);
  const ScalarField rho0 = bump(g, 0.3, 21.0);
  const double dt = 2e-3;
  for (double t : {0.25, 0.5, 0.75}) {
    const Diffeo direct = integrate_final(u0, rho0, 2.0, config(dt, t)).phi;
    const Diffeo scaled = psi(t * u0, t * rho0, 2.0, config(dt / t, 1.0));
    CHECK(max_abs_difference(direct.displacement(), scaled.displacement()) <= 1e-9);
  }
}

TEST_CASE("solution map routes") {
  const Grid g(256, 40.0);
  const EulerState still = solution_map(1.7, ScalarField(g, 0.4), ScalarField(g), 2.0, config(1e-2, 1.0),
                                        SolutionMapRoute::Scaled);
  CHECK(max_abs_difference(still.u, ScalarField(g, 0.4)) <= 1e-12);
  CHECK(still.rho.max_abs() == 0.0);

  const ScalarField u0 = bump(g, 0.6, 18.0);
  const ScalarField rho0 = bump(g, 0.3, 21.0);
  const auto a = solution_map(0.5, u0, rho0, 2.0, config(2e-3, 1.0), SolutionMapRoute::Direct);
  const auto b = solution_map(0.5, u0, rho0, 2.0, config(2e-3, 1.0), SolutionMapRoute::Scaled);
  CHECK(sobolev_norm(a.u - b.u, 2.0) <= 1e-10 * sobolev_norm(a.u, 2.0));
  CHECK(sobolev_norm(a.rho - b.rho, 1.0) <= 1e-10 * sobolev_norm(a.rho, 1.0));
}

TEST_CASE("directional derivative of the time-one map") {
  const Grid g(256, 40.0);
  const SolverConfig cfg = config(5e-3, 1.0);
  const Direction w{bump(g, 1.0, 20.0, 3.0), bump(g, 0.5, 15.0, 2.0)};
  SUBCASE("at the origin it is the first direction") {
    const ScalarField d = directional_derivative_psi(ScalarField(g), ScalarField(g), w, 2.0, cfg);
    CHECK(sobolev_norm(d - w.w1, 2.0) <= 1e-6);
  }
  SUBCASE("central differences converge at second order") {
    const ScalarField u0 = bump(g, 0.5, 18.0);
    const ScalarField rho0 = bump(g, 0.3, 22.0);
    const ScalarField d1 = directional_derivative_psi(u0, rho0, w, 2.0, cfg, 0.2);
    const ScalarField d2 = directional_derivative_psi(u0, rho0, w, 2.0, cfg, 0.1);
    const ScalarField d3 = directional_derivative_psi(u0, rho0, w, 2.0, cfg, 0.05);
    const double ratio = (d1 - d2).max_abs() / (d2 - d3).max_abs();
    CHECK(ratio > 3.6);
    CHECK(ratio < 4.4);
    const ScalarField r = directional_derivative_psi(u0, rho0, w, 2.0, cfg, 0.1, true);
    CHECK((r - d3).max_abs() < (d2 - d3).max_abs());
  }
}

TEST_CASE("energy with the density entering negatively is conserved") {
  // For b = 2 the invariant is the integral of u^2 + u_x^2 - rho^2.
  auto drift = [](std::size_t n, double dt, double sign) {
    const Grid g(n, 40.0);
    const InitialData d = make_preset("bump-pair", g);
    const auto s = euler_integrate(d.u0, d.rho0, 2.0, config(dt, 1.0));
    auto energy = [&](const EulerState& e) {
      return two_component_energy(e.u, e.rho) + (sign > 0 ? 2.0 * sobolev_norm(e.rho, 0.0) * sobolev_norm(e.rho, 0.0) : 0.0);
    };
    return std::abs(energy(s.back()) - energy(s.front()));
  };
  const double coarse = drift(256, 4e-3, -1.0);
  const double fine = drift(512, 2e-3, -1.0);
  CHECK(fine < coarse);
  CHECK(fine < 1e-5);
  CHECK(drift(256, 4e-3, +1.0) > 1e-3);
}
