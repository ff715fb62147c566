#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "bfamily/field.hpp"
#include "bfamily/spectral.hpp"

namespace bfamily {

/// Precomputed quintic B-spline stencils for a fixed set of evaluation
/// points. Reusable across every field sampled at those points.
class SplineStencil {
 public:
  SplineStencil(const Grid& grid, std::span<const double> points);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return first_.size(); }

 private:
  friend class PeriodicSpline;
  Grid grid_;
  std::vector<std::size_t> first_;  // wrapped index of the leftmost coefficient
  std::vector<std::array<double, 6>> weights_;
};

/// Periodic quintic B-spline interpolant of a ScalarField. Interpolates the
/// samples exactly and is accurate to O(h^6) for smooth data.
class PeriodicSpline {
 public:
  explicit PeriodicSpline(const ScalarField& f);
  /// From half-spectrum coefficients as returned by forward_transform.
  static PeriodicSpline from_spectrum(const Grid& grid, Spectrum coefficients);

  const Grid& grid() const noexcept { return grid_; }

  double operator()(double x) const noexcept;
  double derivative(double x) const noexcept;
  /// Value and first derivative in one pass.
  std::array<double, 2> value_and_derivative(double x) const noexcept;

  std::vector<double> sample(const SplineStencil& stencil) const;
  ScalarField sample_field(const SplineStencil& stencil) const;

 private:
  PeriodicSpline(Grid grid, std::vector<double> coefficients)
      : grid_(grid), inv_spacing_(1.0 / grid.spacing()), coefficients_(std::move(coefficients)) {}

  Grid grid_;
  double inv_spacing_;
  std::vector<double> coefficients_;
};

/// Quintic B-spline weights for fractional offset u in [0, 1), coefficient
/// offsets -2..3 relative to floor(x / h).
std::array<double, 6> quintic_weights(double u) noexcept;
std::array<double, 6> quintic_derivative_weights(double u) noexcept;

}  // namespace bfamily
