#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bfamily/grid.hpp"

namespace bfamily {

/// Real samples of a periodic function on a Grid.
class ScalarField {
 public:
  explicit ScalarField(Grid grid);  // zero field
  ScalarField(Grid grid, std::vector<double> values);
  ScalarField(Grid grid, double constant);

  static ScalarField from_function(const Grid& grid, const std::function<double(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }
  double& operator[](std::size_t j) noexcept { return values_[j]; }

  bool is_finite() const noexcept;
  double max_abs() const noexcept;
  /// Periodic trapezoid rule, equal to length times the mean Fourier mode.
  double integral() const noexcept;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double factor) noexcept;

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a);
ScalarField operator*(ScalarField a, double factor);
ScalarField operator*(double factor, ScalarField a);

/// Plain pointwise product and quotient (no spectral truncation).
ScalarField pointwise_product(const ScalarField& a, const ScalarField& b);
ScalarField pointwise_quotient(const ScalarField& a, const ScalarField& b);

/// Sup norm of a - b.
double max_abs_difference(const ScalarField& a, const ScalarField& b);

/// Throws InvalidArgument when the two fields live on different grids.
void require_same_grid(const ScalarField& a, const ScalarField& b, const char* what);

}  // namespace bfamily
