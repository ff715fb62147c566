#pragma once

#include <cstddef>

namespace bfamily {

/// Uniform periodic grid on [0, length) with samples x_j = j * spacing.
class Grid {
 public:
  Grid(std::size_t n_points, double length);

  std::size_t size() const noexcept { return n_points_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return spacing_; }
  double x(std::size_t j) const noexcept { return static_cast<double>(j) * spacing_; }

  /// Number of stored half-spectrum modes, n/2 + 1.
  std::size_t modes() const noexcept { return n_points_ / 2 + 1; }
  /// xi_k = 2 pi k / length for the non-negative half spectrum k = 0..n/2.
  double wavenumber(std::size_t k) const noexcept;
  /// Highest mode index kept by the 2/3 truncation rule.
  std::size_t dealias_cutoff() const noexcept { return n_points_ / 3; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.n_points_ == b.n_points_ && a.length_ == b.length_;
  }

 private:
  std::size_t n_points_;
  double length_;
  double spacing_;
};

}  // namespace bfamily
