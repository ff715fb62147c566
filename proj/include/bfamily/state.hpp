#pragma once

#include <cstddef>
#include <vector>

#include "bfamily/diffeo.hpp"
#include "bfamily/field.hpp"

namespace bfamily {

enum class Integrator { RK4 };

struct SolverConfig {
  double dt = 5e-4;
  double t_final = 1.0;
  Integrator integrator = Integrator::RK4;
  double validity_margin = kDefaultValidityMargin;
  /// Snapshot every `stride` steps; 0 keeps only the initial and final states.
  std::size_t stride = 0;

  /// Throws InvalidArgument for non-positive dt/t_final or dt > t_final.
  void check() const;
  /// round(t_final / dt), at least one.
  std::size_t steps() const;
  /// t_final / steps(): the step actually taken, so the run lands on t_final.
  double step_size() const;
};

/// Flow map phi, its velocity v = phi_t, the frozen density rho0 and the model parameter b.
struct LagrangianState {
  Diffeo phi;
  ScalarField v;
  ScalarField rho0;
  double b;
  double t;

  /// phi = id, v = u0 at t = 0.
  static LagrangianState initial(const ScalarField& u0, const ScalarField& rho0, double b);
};

struct EulerState {
  ScalarField u;
  ScalarField rho;
  double t;
};

struct Trajectory {
  std::vector<LagrangianState> snapshots;

  const LagrangianState& final() const { return snapshots.back(); }
};

}  // namespace bfamily
