#include <doctest.h>

#include "bfamily/errors.hpp"
#include "bfamily/presets.hpp"
#include "bfamily/probe.hpp"
#include "support.hpp"

using namespace bfamily;

namespace {

ProbeSpec small_spec() {
  ProbeSpec spec = default_probe_spec(Grid(1024, 40.0));
  spec.cfg.dt = 2e-3;
  spec.n_list = {4, 8};
  return spec;
}

}  // namespace

TEST_CASE("intervals and numerical support") {
  CHECK(separation({0.0, 1.0}, {2.5, 3.0}) == 1.5);
  CHECK(separation({2.5, 3.0}, {0.0, 1.0}) == 1.5);
  CHECK(separation({0.0, 2.0}, {1.0, 3.0}) == 0.0);

  const Grid g(400, 40.0);
  CHECK_FALSE(numerical_support(ScalarField(g)).has_value());
  const auto s = numerical_support(ScalarField::from_function(g, [](double x) { return smooth_bump((x - 10.0) / 2.0); }));
  REQUIRE(s.has_value());
  CHECK(s->lo > 8.0);
  CHECK(s->lo < 8.2);
  CHECK(s->hi < 12.0);
  CHECK(s->hi > 11.8);
}

TEST_CASE("hump construction") {
  const Grid g(4096, 40.0);
  const SobolevIndex s(2.0);
  const double m = 0.13, w1 = 92.3, R = 0.1, a = 12.0, L = 1.02;
  double previous_width = 0.0;
  for (int n : {4, 8, 16, 32}) {
    const ScalarField h = build_hump(n, m, w1, R, a, L, s, g);
    CHECK(sobolev_norm(h, 1.0) == doctest::Approx(R / 4.0).epsilon(1e-10));
    const double r = m * w1 / (8.0 * n);
    const auto supp = numerical_support(h);
    REQUIRE(supp.has_value());
    CHECK(supp->lo >= a - r / L);
    CHECK(supp->hi <= a + r / L);
    if (previous_width > 0.0) CHECK(supp->width() == doctest::Approx(previous_width / 2.0).epsilon(0.1));
    previous_width = supp->width();
  }
  try {
    build_hump(64, m, w1, R, a, L, s, g);
    FAIL("expected an under-resolution error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::UnderResolution);
  }
  CHECK_THROWS_AS(build_hump(4, 0.0, w1, R, a, L, s, g), Error);
}

TEST_CASE("probe spec invariants") {
  ProbeSpec spec = small_spec();
  CHECK_NOTHROW(spec.check());

  ProbeSpec near = spec;
  near.a_star = 10.0;
  CHECK_THROWS_AS(near.check(), Error);

  ProbeSpec flat = spec;
  flat.w1 = ScalarField(flat.w1.grid());
  CHECK_THROWS_AS(flat.check(), Error);

  ProbeSpec seam = spec;
  seam.base_u = ScalarField::from_function(seam.base_u.grid(), [](double x) { return smooth_bump((x - 3.0) / 2.0); });
  CHECK_THROWS_AS(seam.check(), Error);

  ProbeSpec order = spec;
  order.n_list = {8, 4};
  CHECK_THROWS_AS(order.check(), Error);
}

TEST_CASE("transversality") {
  const ProbeSpec spec = small_spec();
  const auto zero = measure_transversality(spec.base_u, spec.base_rho, ScalarField(spec.w1.grid()), spec.a_star,
                                           spec.b, spec.cfg, {0.0, 1.0});
  for (const auto& sample : zero) {
    REQUIRE(sample.value.has_value());
    CHECK(*sample.value == 0.0);
  }
  const auto at_zero =
      measure_transversality(spec.base_u, spec.base_rho, spec.w1, spec.a_star, spec.b, spec.cfg, {0.0});
  REQUIRE(at_zero.front().value.has_value());
  CHECK(std::abs(*at_zero.front().value - evaluate(spec.w1, spec.a_star)) <= 1e-6);

  const ScalarField steep = ScalarField::from_function(
      spec.w1.grid(), [](double x) { return 4.0 * std::exp(-(x - 18.0) * (x - 18.0)); });
  const auto mixed = measure_transversality(steep, spec.base_rho, spec.w1, spec.a_star, spec.b, spec.cfg, {0.0, 1.0});
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].value.has_value());
  CHECK_FALSE(mixed[1].value.has_value());
  CHECK(mixed[1].failure == ErrorCategory::Breakdown);
  CHECK_FALSE(mixed[1].error.empty());
}

TEST_CASE("moving-hump probe on a coarse grid") {
  const ProbeSpec spec = small_spec();
  const ProbeReport r = run_nonuniformity_probe(spec, 1);
  CHECK(r.m == doctest::Approx(std::abs(r.transversality) / (2.0 * r.w1_norm)));
  CHECK(r.L_lip >= 1.0);
  REQUIRE(r.members.size() == 2);
  CHECK(r.all_members_ok);
  CHECK(r.initial_distances_exact);
  for (const ProbeMember& m : r.members) {
    CHECK(m.initial_rho_distance == 0.0);
    CHECK(m.hump_norm == doctest::Approx(spec.radius / 4.0).epsilon(1e-10));
    CHECK(m.hump_supports_disjoint);
    CHECK(m.final_rho_distance > 0.0);
  }
  CHECK(r.gap_tracks_transversality);

  const ProbeReport again = run_nonuniformity_probe(spec, 2);
  for (std::size_t i = 0; i < r.members.size(); ++i) {
    CHECK(again.members[i].final_rho_distance == r.members[i].final_rho_distance);
    CHECK(again.members[i].hump_center_gap == r.members[i].hump_center_gap);
  }
}

TEST_CASE("scale invariance") {
  const Grid g(256, 40.0);
  SolverConfig cfg;
  cfg.dt = 4e-3;
  const auto zero = check_scale_invariance(ScalarField(g), ScalarField(g), 2.0, SobolevIndex(), {0.5}, cfg);
  CHECK(zero.front().ok);
  CHECK(zero.front().relative == 0.0);

  const InitialData d = make_preset("bump-pair", g);
  const auto checks = check_scale_invariance(d.u0, d.rho0, 2.0, SobolevIndex(), {1.0, 0.5, 0.7, 1.3}, cfg);
  CHECK(checks[0].relative <= 1e-15);
  for (const auto& c : checks) {
    CHECK(c.ok);
    CHECK(c.relative <= 1e-10);
  }
}
