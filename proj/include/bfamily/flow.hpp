#pragma once

#include <functional>
#include <optional>

#include "bfamily/state.hpp"

namespace bfamily {

/// Right-hand side of phi_tt = F(phi, phi_t, rho0):
/// (1 - d^2)^{-1}(-b u u_x + (b - 3) u_x u_xx + rho rho_x) o phi with
/// u = v o phi^{-1} and rho = (rho0 / phi_x) o phi^{-1}.
ScalarField rhs_F(const LagrangianState& state, double margin = kDefaultValidityMargin);

/// RK4 on (phi, v)' = (v, F). Loss of positivity of phi_x raises a Breakdown
/// error carrying the time; non-finite values raise BlowUp.
Trajectory integrate(const ScalarField& u0, const ScalarField& rho0, double b, const SolverConfig& cfg);

/// Final state only; same stepping as integrate.
LagrangianState integrate_final(const ScalarField& u0, const ScalarField& rho0, double b,
                                const SolverConfig& cfg);

using StepObserver = std::function<void(const LagrangianState&)>;

/// Same stepping as integrate; `observe` sees the initial state and every accepted step.
LagrangianState integrate_observed(const ScalarField& u0, const ScalarField& rho0, double b,
                                   const SolverConfig& cfg, const StepObserver& observe);

/// Eulerian fields u = v o phi^{-1}, rho = (rho0 / phi_x) o phi^{-1}.
EulerState reconstruct(const LagrangianState& state);

/// Time-one flow map (u0, rho0) -> phi(1); cfg.t_final is ignored.
Diffeo psi(const ScalarField& u0, const ScalarField& rho0, double b, const SolverConfig& cfg);

enum class SolutionMapRoute { Direct, Scaled };

/// Solution map Phi_T. Direct integrates to T with cfg.dt; Scaled integrates
/// (T u0, T rho0) to time one with step cfg.dt / T and divides by T.
EulerState solution_map(double T, const ScalarField& u0, const ScalarField& rho0, double b,
                        const SolverConfig& cfg, SolutionMapRoute route = SolutionMapRoute::Direct);

struct Direction {
  ScalarField w1;
  ScalarField w2;
};

/// 1e-4 * max(1, |u0|_inf, |rho0|_inf) / max(1, |w1|_inf, |w2|_inf).
double default_psi_step(const ScalarField& u0, const ScalarField& rho0, const Direction& w);

/// Central difference (Psi(x + eps w) - Psi(x - eps w)) / (2 eps) of the
/// displacement; with `richardson`, combines eps and eps/2 to fourth order.
ScalarField directional_derivative_psi(const ScalarField& u0, const ScalarField& rho0, const Direction& w,
                                       double b, const SolverConfig& cfg,
                                       std::optional<double> eps = std::nullopt, bool richardson = false);

struct FlowDiagnostics {
  double t;
  double min_jacobian;
  double max_jacobian;
  /// max_j |phi_x (rho o phi) - rho0| with rho reconstructed.
  double conservation_error;
  /// integral of the reconstructed rho.
  double mass;
  /// integral of u^2 + u_x^2 - rho^2, conserved for b = 2.
  double energy;
};

FlowDiagnostics diagnose(const LagrangianState& state);

/// integral of u^2 + u_x^2 - rho^2.
double two_component_energy(const ScalarField& u, const ScalarField& rho);

}  // namespace bfamily
