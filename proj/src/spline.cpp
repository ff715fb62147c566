#include "bfamily/spline.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "bfamily/errors.hpp"
#include "fft.hpp"

namespace bfamily {
namespace {

struct Locator {
  std::size_t first;
  double frac;
};

Locator locate(double x, double inv_spacing, std::size_t n) {
  const double t = x * inv_spacing;
  // Truncating cast plus correction; std::floor is a libm call on baseline x86-64.
  double cell = static_cast<double>(static_cast<long long>(t));
  if (cell > t) cell -= 1.0;
  const auto ln = static_cast<long long>(n);
  long long first = static_cast<long long>(cell) - 2;
  if (first < 0 || first >= ln) {
    first %= ln;
    if (first < 0) first += ln;
  }
  return {static_cast<std::size_t>(first), t - cell};
}

double apply(const std::vector<double>& c, std::size_t first, const std::array<double, 6>& w) {
  const std::size_t n = c.size();
  double sum = 0.0;
  if (first + 6 <= n) {
    for (std::size_t m = 0; m < 6; ++m) sum += w[m] * c[first + m];
  } else {
    for (std::size_t m = 0; m < 6; ++m) {
      std::size_t idx = first + m;
      if (idx >= n) idx -= n;
      sum += w[m] * c[idx];
    }
  }
  return sum;
}

// 1 / sum_j beta5(j) exp(-i theta j) per mode, cached per grid size.
const std::vector<double>& inverse_spline_symbol(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<double>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (slot.empty()) {
    slot.resize(n / 2 + 1);
    for (std::size_t k = 0; k < slot.size(); ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      slot[k] = 120.0 / (66.0 + 52.0 * std::cos(theta) + 2.0 * std::cos(2.0 * theta));
    }
  }
  return slot;
}

}  // namespace

std::array<double, 6> quintic_weights(double u) noexcept {
  constexpr double c120 = 1.0 / 120.0, c60 = 13.0 / 60.0, c24 = 1.0 / 24.0, c12 = 1.0 / 12.0,
                   c6 = 1.0 / 6.0, c5_12 = 5.0 / 12.0;
  const double v = 1.0 - u;
  const double u2 = u * u, v2 = v * v;
  return {
      v2 * v2 * v * c120,
      c60 + u * (-c5_12 + u * (c6 + u * (c6 + u * (-c6 + u * c24)))),
      0.55 + u2 * (-0.5 + u2 * (0.25 - u * c12)),
      c60 + u * (c5_12 + u * (c6 + u * (-c6 + u * (-c6 + u * c12)))),
      c120 + u * (c24 + u * (c12 + u * (c12 + u * (c24 - u * c24)))),
      u2 * u2 * u * c120,
  };
}

std::array<double, 6> quintic_derivative_weights(double u) noexcept {
  constexpr double c24 = 1.0 / 24.0, c6 = 1.0 / 6.0, c3 = 1.0 / 3.0, c5_12 = 5.0 / 12.0,
                   c5_24 = 5.0 / 24.0, c2_3 = 2.0 / 3.0;
  const double v = 1.0 - u;
  const double u2 = u * u, v2 = v * v;
  return {
      -v2 * v2 * c24,
      -c5_12 + u * (c3 + u * (0.5 + u * (-c2_3 + u * c5_24))),
      u * (-1.0 + u2 * (1.0 - u * c5_12)),
      c5_12 + u * (c3 + u * (-0.5 + u * (-c2_3 + u * c5_12))),
      c24 + u * (c6 + u * (0.25 + u * (c6 - u * c5_24))),
      u2 * u2 * c24,
  };
}

SplineStencil::SplineStencil(const Grid& grid, std::span<const double> points) : grid_(grid) {
  first_.resize(points.size());
  weights_.resize(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    const Locator loc = locate(points[j], 1.0 / grid.spacing(), grid.size());
    first_[j] = loc.first;
    weights_[j] = quintic_weights(loc.frac);
  }
}

PeriodicSpline::PeriodicSpline(const ScalarField& f)
    : PeriodicSpline(from_spectrum(f.grid(), forward_transform(f))) {}

PeriodicSpline PeriodicSpline::from_spectrum(const Grid& grid, Spectrum spec) {
  // Interpolation condition sum_m c_m beta5(j - m) = f_j, solved mode by mode.
  const auto& inv_symbol = inverse_spline_symbol(grid.size());
  if (spec.size() != inv_symbol.size()) {
    throw Error(ErrorCategory::InvalidArgument, "spectrum length does not match grid");
  }
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= inv_symbol[k];
  std::vector<double> coeffs(grid.size());
  detail::fft_backward(spec, coeffs);
  return PeriodicSpline(grid, std::move(coeffs));
}

double PeriodicSpline::operator()(double x) const noexcept {
  const Locator loc = locate(x, inv_spacing_, grid_.size());
  return apply(coefficients_, loc.first, quintic_weights(loc.frac));
}

double PeriodicSpline::derivative(double x) const noexcept {
  const Locator loc = locate(x, inv_spacing_, grid_.size());
  return apply(coefficients_, loc.first, quintic_derivative_weights(loc.frac)) * inv_spacing_;
}

std::array<double, 2> PeriodicSpline::value_and_derivative(double x) const noexcept {
  const Locator loc = locate(x, inv_spacing_, grid_.size());
  return {apply(coefficients_, loc.first, quintic_weights(loc.frac)),
          apply(coefficients_, loc.first, quintic_derivative_weights(loc.frac)) * inv_spacing_};
}

std::vector<double> PeriodicSpline::sample(const SplineStencil& stencil) const {
  std::vector<double> out(stencil.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = apply(coefficients_, stencil.first_[j], stencil.weights_[j]);
  }
  return out;
}

ScalarField PeriodicSpline::sample_field(const SplineStencil& stencil) const {
  return ScalarField(grid_, sample(stencil));
}

}  // namespace bfamily
