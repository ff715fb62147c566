#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bfamily/diffeo.hpp"
#include "bfamily/spectral.hpp"

namespace testing {

using namespace bfamily;

inline constexpr double kPi = std::numbers::pi;

/// sum_k a_k cos(xi_k x) + b_k sin(xi_k x) over modes 1..kmax with seeded
/// coefficients decaying like 1 / k^2.
struct TrigPolynomial {
  double length;
  std::vector<double> a, b;

  TrigPolynomial(double L, int kmax, unsigned seed) : length(L) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 1; k <= kmax; ++k) {
      a.push_back(u(rng) / (k * k));
      b.push_back(u(rng) / (k * k));
    }
  }

  double operator()(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double xi = 2.0 * kPi * static_cast<double>(k + 1) / length;
      s += a[k] * std::cos(xi * x) + b[k] * std::sin(xi * x);
    }
    return s;
  }

  double derivative(double x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double xi = 2.0 * kPi * static_cast<double>(k + 1) / length;
      s += xi * (-a[k] * std::sin(xi * x) + b[k] * std::cos(xi * x));
    }
    return s;
  }

  ScalarField sample(const Grid& g) const {
    return ScalarField::from_function(g, [this](double x) { return (*this)(x); });
  }
};

/// Random smooth diffeomorphism whose minimum of phi_x equals `min_jacobian`.
inline Diffeo random_diffeo(const Grid& g, unsigned seed, double min_jacobian, int kmax = 4) {
  const TrigPolynomial p(g.length(), kmax, seed);
  const ScalarField d0 = p.sample(g);
  const Diffeo raw(d0);
  const double lowest = raw.min_jacobian() - 1.0;
  return Diffeo((1.0 - min_jacobian) / -lowest * d0);
}

inline double relative_sup(const ScalarField& a, const ScalarField& b) {
  return max_abs_difference(a, b) / std::max(b.max_abs(), 1e-300);
}

}  // namespace testing
