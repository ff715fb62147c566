#pragma once

#include <cstddef>
#include <vector>

#include "bfamily/field.hpp"
#include "bfamily/spline.hpp"

namespace bfamily {

/// Floor on min phi_x below which a map no longer counts as a diffeomorphism.
inline constexpr double kDefaultValidityMargin = 1e-8;

/// Orientation-preserving map of the periodic line, phi(x) = x + displacement(x),
/// extended by phi(x + L) = phi(x) + L. The spectral Jacobian phi_x is computed
/// once at construction; validity is checked by the operations that need it.
class Diffeo {
 public:
  explicit Diffeo(ScalarField displacement);

  static Diffeo identity(const Grid& grid);
  static Diffeo shift(const Grid& grid, double offset);

  const Grid& grid() const noexcept { return displacement_.grid(); }
  const ScalarField& displacement() const noexcept { return displacement_; }
  /// phi_x = 1 + displacement'.
  const ScalarField& jacobian() const noexcept { return jacobian_; }
  double min_jacobian() const noexcept { return min_jacobian_; }
  double max_jacobian() const noexcept { return max_jacobian_; }
  std::size_t argmin_jacobian() const noexcept { return argmin_; }

  /// Spline of the displacement, for off-grid evaluation.
  const PeriodicSpline& spline() const noexcept { return spline_; }

  /// phi(x_j) for every grid point.
  std::vector<double> positions() const;

 private:
  struct Parts {
    ScalarField displacement;
    ScalarField jacobian;
    PeriodicSpline spline;
  };
  static Parts build(ScalarField displacement);
  explicit Diffeo(Parts&& parts);

  ScalarField displacement_;
  ScalarField jacobian_;
  PeriodicSpline spline_;
  double min_jacobian_ = 1.0;
  double max_jacobian_ = 1.0;
  std::size_t argmin_ = 0;
};

struct Validation {
  bool valid;
  double min_jacobian;
  double argmin_x;
};

Validation validate(const Diffeo& phi, double margin = kDefaultValidityMargin);

/// Throws InvalidDiffeo unless validate(phi, margin) passes.
void require_valid(const Diffeo& phi, double margin = kDefaultValidityMargin);

/// f o phi sampled on the grid, f evaluated by periodic quintic spline.
ScalarField compose(const ScalarField& f, const Diffeo& phi);

/// phi o psi.
Diffeo compose(const Diffeo& phi, const Diffeo& psi);

/// Positions psi(x_j) of the inverse map; see invert.
std::vector<double> inverse_positions(const Diffeo& phi);

/// Inverse by bracketing on the monotone samples of phi, then safeguarded
/// Newton on the spline-interpolated map. Residual |phi(psi(x_j)) - x_j| is
/// driven to round-off; failure to reach 1e-10 L throws UnderResolution.
Diffeo invert(const Diffeo& phi);

/// partial_x(w o phi^{-1}) o phi computed as w_x / phi_x, without inversion.
ScalarField conjugated_derivative(const ScalarField& w, const Diffeo& phi);

/// phi(x) for an arbitrary real x.
double evaluate(const Diffeo& phi, double x);

/// Spline value of f at an arbitrary real x.
double evaluate(const ScalarField& f, double x);

}  // namespace bfamily
