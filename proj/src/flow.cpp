#include "bfamily/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bfamily/errors.hpp"
#include "bfamily/spectral.hpp"
#include "bfamily/spline.hpp"

namespace bfamily {
namespace {

[[noreturn]] void rethrow_at(const Error& e, double t) {
  switch (e.category()) {
    case ErrorCategory::InvalidDiffeo:
    case ErrorCategory::Breakdown:
      throw Error(ErrorCategory::Breakdown,
                  "Lagrangian breakdown at t = " + std::to_string(t) + ": " + e.what(), t);
    case ErrorCategory::BlowUp:
      throw Error(ErrorCategory::BlowUp, "blow-up at t = " + std::to_string(t) + ": " + e.what(), t);
    default:
      throw e;
  }
}

// (1 - d^2)^{-1} of the 2/3-truncated source, returned as its interpolating
// spline. Truncation is linear, so truncating the sum equals summing truncated
// products.
PeriodicSpline smoothed_source(const ScalarField& source) {
  const Grid& g = source.grid();
  Spectrum c = forward_transform(source);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k > g.dealias_cutoff()) {
      c[k] = 0.0;
    } else {
      const double xi = g.wavenumber(k);
      c[k] /= 1.0 + xi * xi;
    }
  }
  return PeriodicSpline::from_spectrum(g, std::move(c));
}

struct Derivatives {
  ScalarField first;
  ScalarField second;
};

Derivatives first_two_derivatives(const ScalarField& u) {
  const Grid& g = u.grid();
  const Spectrum c = forward_transform(u);
  Spectrum c1 = c, c2 = c;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double xi = g.wavenumber(k);
    c1[k] *= std::complex<double>(0.0, xi);
    c2[k] *= -xi * xi;
  }
  c1.back() = 0.0;
  return {inverse_transform(g, c1), inverse_transform(g, c2)};
}

template <class OnStep>
LagrangianState run(const ScalarField& u0, const ScalarField& rho0, double b, const SolverConfig& cfg,
                    OnStep&& on_step) {
  cfg.check();
  require_same_grid(u0, rho0, "integrate");
  if (!u0.is_finite() || !rho0.is_finite()) {
    throw Error(ErrorCategory::InvalidArgument, "initial data must be finite");
  }
  const std::size_t n = cfg.steps();
  const double h = cfg.step_size();
  const double margin = cfg.validity_margin;

  auto force = [&](const ScalarField& disp, const ScalarField& v, double t) {
    try {
      return rhs_F(LagrangianState{Diffeo(disp), v, rho0, b, t}, margin);
    } catch (const Error& e) {
      rethrow_at(e, t);
    }
  };

  LagrangianState state = LagrangianState::initial(u0, rho0, b);
  on_step(std::size_t{0}, n, state);
  for (std::size_t i = 1; i <= n; ++i) {
    const double t0 = state.t;
    const ScalarField& d = state.phi.displacement();
    const ScalarField& v = state.v;

    const ScalarField a1 = [&] {
      try {
        return rhs_F(state, margin);
      } catch (const Error& e) {
        rethrow_at(e, t0);
      }
    }();
    const ScalarField d2 = d + (0.5 * h) * v;
    const ScalarField v2 = v + (0.5 * h) * a1;
    const ScalarField a2 = force(d2, v2, t0 + 0.5 * h);
    const ScalarField d3 = d + (0.5 * h) * v2;
    const ScalarField v3 = v + (0.5 * h) * a2;
    const ScalarField a3 = force(d3, v3, t0 + 0.5 * h);
    const ScalarField d4 = d + h * v3;
    const ScalarField v4 = v + h * a3;
    const ScalarField a4 = force(d4, v4, t0 + h);

    ScalarField d_next = d;
    ScalarField v_next = v;
    for (std::size_t j = 0; j < d_next.size(); ++j) {
      d_next[j] += h / 6.0 * (v[j] + 2.0 * v2[j] + 2.0 * v3[j] + v4[j]);
      v_next[j] += h / 6.0 * (a1[j] + 2.0 * a2[j] + 2.0 * a3[j] + a4[j]);
    }
    const double t = i == n ? cfg.t_final : static_cast<double>(i) * h;
    if (!v_next.is_finite()) {
      throw Error(ErrorCategory::BlowUp, "blow-up at t = " + std::to_string(t), t);
    }
    try {
      state = LagrangianState{Diffeo(std::move(d_next)), std::move(v_next), rho0, b, t};
      require_valid(state.phi, margin);
    } catch (const Error& e) {
      rethrow_at(e, t);
    }
    on_step(i, n, state);
  }
  return state;
}

}  // namespace

ScalarField rhs_F(const LagrangianState& state, double margin) {
  const Diffeo& phi = state.phi;
  require_same_grid(state.v, phi.displacement(), "rhs_F");
  require_same_grid(state.rho0, phi.displacement(), "rhs_F");
  require_valid(phi, margin);
  const Grid& g = phi.grid();
  const double b = state.b;

  const SplineStencil to_euler(g, inverse_positions(phi));
  const ScalarField u = PeriodicSpline(state.v).sample_field(to_euler);
  const auto [ux, uxx] = first_two_derivatives(u);

  ScalarField source(g);
  for (std::size_t j = 0; j < source.size(); ++j) {
    source[j] = -b * u[j] * ux[j] + (b - 3.0) * ux[j] * uxx[j];
  }
  if (state.rho0.max_abs() > 0.0) {
    // rho_x o phi = q_x / phi_x with q = rho0 / phi_x, so rho_x is built before
    // interpolation rather than by differentiating interpolated data.
    const ScalarField q = pointwise_quotient(state.rho0, phi.jacobian());
    Spectrum cq = forward_transform(q);
    Spectrum cqx = cq;
    for (std::size_t k = 0; k < cqx.size(); ++k) cqx[k] *= std::complex<double>(0.0, g.wavenumber(k));
    cqx.back() = 0.0;
    const ScalarField qx_over_jac = pointwise_quotient(inverse_transform(g, cqx), phi.jacobian());
    const ScalarField rho = PeriodicSpline::from_spectrum(g, std::move(cq)).sample_field(to_euler);
    const ScalarField rho_x = PeriodicSpline(qx_over_jac).sample_field(to_euler);
    for (std::size_t j = 0; j < source.size(); ++j) source[j] += rho[j] * rho_x[j];
  }

  ScalarField F = smoothed_source(source).sample_field(SplineStencil(g, phi.positions()));
  if (!F.is_finite()) {
    throw Error(ErrorCategory::BlowUp, "non-finite acceleration", state.t);
  }
  return F;
}

Trajectory integrate(const ScalarField& u0, const ScalarField& rho0, double b, const SolverConfig& cfg) {
  Trajectory traj;
  run(u0, rho0, b, cfg, [&](std::size_t i, std::size_t n, const LagrangianState& s) {
    if (i == 0 || i == n || (cfg.stride > 0 && i % cfg.stride == 0)) traj.snapshots.push_back(s);
  });
  return traj;
}

LagrangianState integrate_final(const ScalarField& u0, const ScalarField& rho0, double b,
                                const SolverConfig& cfg) {
  return run(u0, rho0, b, cfg, [](std::size_t, std::size_t, const LagrangianState&) {});
}

LagrangianState integrate_observed(const ScalarField& u0, const ScalarField& rho0, double b,
                                   const SolverConfig& cfg, const StepObserver& observe) {
  return run(u0, rho0, b, cfg, [&](std::size_t, std::size_t, const LagrangianState& s) { observe(s); });
}

EulerState reconstruct(const LagrangianState& state) {
  const Diffeo& phi = state.phi;
  const SplineStencil to_euler(phi.grid(), inverse_positions(phi));
  ScalarField u = PeriodicSpline(state.v).sample_field(to_euler);
  ScalarField rho =
      PeriodicSpline(pointwise_quotient(state.rho0, phi.jacobian())).sample_field(to_euler);
  return {std::move(u), std::move(rho), state.t};
}

Diffeo psi(const ScalarField& u0, const ScalarField& rho0, double b, const SolverConfig& cfg) {
  SolverConfig unit = cfg;
  unit.t_final = 1.0;
  return integrate_final(u0, rho0, b, unit).phi;
}

EulerState solution_map(double T, const ScalarField& u0, const ScalarField& rho0, double b,
                        const SolverConfig& cfg, SolutionMapRoute route) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw Error(ErrorCategory::InvalidArgument, "solution map time must be positive");
  }
  SolverConfig c = cfg;
  if (route == SolutionMapRoute::Direct) {
    c.t_final = T;
    return reconstruct(integrate_final(u0, rho0, b, c));
  }
  c.t_final = 1.0;
  c.dt = cfg.dt / T;
  EulerState e = reconstruct(integrate_final(T * u0, T * rho0, b, c));
  e.u *= 1.0 / T;
  e.rho *= 1.0 / T;
  e.t = T;
  return e;
}

double default_psi_step(const ScalarField& u0, const ScalarField& rho0, const Direction& w) {
  const double base = std::max({1.0, u0.max_abs(), rho0.max_abs()});
  const double dir = std::max({1.0, w.w1.max_abs(), w.w2.max_abs()});
  return 1e-4 * base / dir;
}

ScalarField directional_derivative_psi(const ScalarField& u0, const ScalarField& rho0, const Direction& w,
                                       double b, const SolverConfig& cfg, std::optional<double> eps,
                                       bool richardson) {
  require_same_grid(u0, w.w1, "directional derivative");
  require_same_grid(rho0, w.w2, "directional derivative");
  const double step = eps.value_or(default_psi_step(u0, rho0, w));
  if (!(step > 0.0)) {
    throw Error(ErrorCategory::InvalidArgument, "difference step must be positive");
  }
  auto central = [&](double e) {
    const Diffeo plus = psi(u0 + e * w.w1, rho0 + e * w.w2, b, cfg);
    const Diffeo minus = psi(u0 - e * w.w1, rho0 - e * w.w2, b, cfg);
    return (plus.displacement() - minus.displacement()) * (0.5 / e);
  };
  if (!richardson) return central(step);
  const ScalarField coarse = central(step);
  const ScalarField fine = central(0.5 * step);
  return (4.0 * fine - coarse) * (1.0 / 3.0);
}

double two_component_energy(const ScalarField& u, const ScalarField& rho) {
  require_same_grid(u, rho, "energy");
  const ScalarField ux = derivative(u, 1);
  double sum = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) sum += u[j] * u[j] + ux[j] * ux[j] - rho[j] * rho[j];
  return sum * u.grid().spacing();
}

FlowDiagnostics diagnose(const LagrangianState& state) {
  const EulerState e = reconstruct(state);
  const ScalarField pulled = compose(e.rho, state.phi);
  const ScalarField& jac = state.phi.jacobian();
  double err = 0.0;
  for (std::size_t j = 0; j < pulled.size(); ++j) {
    err = std::max(err, std::abs(jac[j] * pulled[j] - state.rho0[j]));
  }
  return {state.t,  state.phi.min_jacobian(), state.phi.max_jacobian(),
          err,      e.rho.integral(),         two_component_energy(e.u, e.rho)};
}

}  // namespace bfamily
