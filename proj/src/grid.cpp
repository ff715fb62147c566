#include "bfamily/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bfamily/errors.hpp"

namespace bfamily {

Grid::Grid(std::size_t n_points, double length)
    : n_points_(n_points), length_(length), spacing_(length / static_cast<double>(n_points)) {
  if (n_points < 8 || n_points % 2 != 0) {
    throw Error(ErrorCategory::InvalidArgument,
                "grid needs an even number of points >= 8, got " + std::to_string(n_points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorCategory::InvalidArgument, "grid length must be positive and finite");
  }
}

double Grid::wavenumber(std::size_t k) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / length_;
}

}  // namespace bfamily
