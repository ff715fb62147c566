#include "bfamily/euler.hpp"

#include <cmath>
#include <string>

#include "bfamily/errors.hpp"
#include "bfamily/spectral.hpp"

namespace bfamily {
namespace {

EulerState rk4_step(const EulerState& s, double b, double h) {
  auto shifted = [&](const std::pair<ScalarField, ScalarField>& k, double c, double t) {
    return EulerState{s.u + (c * h) * k.first, s.rho + (c * h) * k.second, t};
  };
  const auto k1 = euler_rhs(s, b);
  const auto k2 = euler_rhs(shifted(k1, 0.5, s.t + 0.5 * h), b);
  const auto k3 = euler_rhs(shifted(k2, 0.5, s.t + 0.5 * h), b);
  const auto k4 = euler_rhs(shifted(k3, 1.0, s.t + h), b);
  EulerState next = s;
  for (std::size_t j = 0; j < next.u.size(); ++j) {
    next.u[j] += h / 6.0 * (k1.first[j] + 2.0 * k2.first[j] + 2.0 * k3.first[j] + k4.first[j]);
    next.rho[j] += h / 6.0 * (k1.second[j] + 2.0 * k2.second[j] + 2.0 * k3.second[j] + k4.second[j]);
  }
  next.t = s.t + h;
  return next;
}

void finish_step(EulerState& s, const EulerOptions& options) {
  if (options.filter) {
    s.u = exponential_filter(s.u, options.filter_order, options.filter_strength);
    s.rho = exponential_filter(s.rho, options.filter_order, options.filter_strength);
  }
  if (!s.u.is_finite() || !s.rho.is_finite()) {
    throw Error(ErrorCategory::BlowUp, "Eulerian blow-up at t = " + std::to_string(s.t), s.t);
  }
}

}  // namespace

std::pair<ScalarField, ScalarField> euler_rhs(const EulerState& state, double b) {
  require_same_grid(state.u, state.rho, "euler_rhs");
  const Grid& g = state.u.grid();
  const std::size_t cutoff = g.dealias_cutoff();

  const Spectrum cu = forward_transform(state.u);
  Spectrum c1 = cu, c2 = cu;
  for (std::size_t k = 0; k < cu.size(); ++k) {
    const double xi = g.wavenumber(k);
    c1[k] *= std::complex<double>(0.0, xi);
    c2[k] *= -xi * xi;
  }
  c1.back() = 0.0;
  const ScalarField ux = inverse_transform(g, c1);
  const ScalarField uxx = inverse_transform(g, c2);
  const ScalarField rhox = derivative(state.rho, 1);

  ScalarField advect(g), source(g), flux(g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double u = state.u[j];
    advect[j] = u * ux[j];
    source[j] = -b * u * ux[j] + (b - 3.0) * ux[j] * uxx[j] + state.rho[j] * rhox[j];
    flux[j] = state.rho[j] * u;
  }

  // u_t = -D(u u_x) + H D(source);  rho_t = -d/dx D(rho u), with D the 2/3 truncation.
  Spectrum ca = forward_transform(advect);
  Spectrum cs = forward_transform(source);
  Spectrum cf = forward_transform(flux);
  Spectrum cut(cu.size()), crt(cu.size());
  for (std::size_t k = 0; k <= cutoff && k < cu.size(); ++k) {
    const double xi = g.wavenumber(k);
    cut[k] = -ca[k] + cs[k] / (1.0 + xi * xi);
    crt[k] = -std::complex<double>(0.0, xi) * cf[k];
  }
  crt.back() = 0.0;
  return {inverse_transform(g, cut), inverse_transform(g, crt)};
}

std::vector<EulerState> euler_integrate(const ScalarField& u0, const ScalarField& rho0, double b,
                                        const SolverConfig& cfg, const EulerOptions& options) {
  cfg.check();
  require_same_grid(u0, rho0, "euler_integrate");
  const std::size_t n = cfg.steps();
  const double h = cfg.step_size();
  std::vector<EulerState> out;
  EulerState state{u0, rho0, 0.0};
  out.push_back(state);
  for (std::size_t i = 1; i <= n; ++i) {
    state = rk4_step(state, b, h);
    state.t = i == n ? cfg.t_final : static_cast<double>(i) * h;
    finish_step(state, options);
    if (i == n || (cfg.stride > 0 && i % cfg.stride == 0)) out.push_back(state);
  }
  return out;
}

EulerState euler_advance(EulerState state, double b, double dt, std::size_t steps,
                         const EulerOptions& options) {
  require_same_grid(state.u, state.rho, "euler_advance");
  for (std::size_t i = 0; i < steps; ++i) {
    state = rk4_step(state, b, dt);
    finish_step(state, options);
  }
  return state;
}

}  // namespace bfamily
