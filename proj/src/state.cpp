#include "bfamily/state.hpp"

#include <cmath>
#include <string>

#include "bfamily/errors.hpp"

namespace bfamily {

void SolverConfig::check() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCategory::InvalidArgument, "dt must be positive, got " + std::to_string(dt));
  }
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw Error(ErrorCategory::InvalidArgument,
                "t_final must be positive, got " + std::to_string(t_final));
  }
  if (dt > t_final * (1.0 + 1e-12)) {
    throw Error(ErrorCategory::InvalidArgument, "dt exceeds t_final");
  }
  if (!(validity_margin >= 0.0)) {
    throw Error(ErrorCategory::InvalidArgument, "validity margin must be non-negative");
  }
}

std::size_t SolverConfig::steps() const {
  const double ratio = std::round(t_final / dt);
  return ratio < 1.0 ? 1 : static_cast<std::size_t>(ratio);
}

double SolverConfig::step_size() const { return t_final / static_cast<double>(steps()); }

LagrangianState LagrangianState::initial(const ScalarField& u0, const ScalarField& rho0, double b) {
  require_same_grid(u0, rho0, "initial state");
  return {Diffeo::identity(u0.grid()), u0, rho0, b, 0.0};
}

}  // namespace bfamily
