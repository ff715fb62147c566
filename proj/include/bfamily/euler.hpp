#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bfamily/state.hpp"

namespace bfamily {

struct EulerOptions {
  /// Exponential spectral filter applied after each step; off by default.
  bool filter = false;
  int filter_order = 36;
  double filter_strength = 36.0;
};

/// (u_t, rho_t) = (-u u_x + (1 - d^2)^{-1}(-b u u_x + (b - 3) u_x u_xx + rho rho_x), -(rho u)_x),
/// every product 2/3-dealiased.
std::pair<ScalarField, ScalarField> euler_rhs(const EulerState& state, double b);

/// RK4 from t = 0 to cfg.t_final, snapshots as in integrate.
std::vector<EulerState> euler_integrate(const ScalarField& u0, const ScalarField& rho0, double b,
                                        const SolverConfig& cfg, const EulerOptions& options = {});

/// `steps` RK4 steps of signed size dt; negative dt integrates backward.
EulerState euler_advance(EulerState state, double b, double dt, std::size_t steps,
                         const EulerOptions& options = {});

}  // namespace bfamily
