#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bfamily/field.hpp"

namespace bfamily {

/// Default Sobolev exponent; keeps rho in H^1.
inline constexpr double kDefaultSobolevIndex = 2.0;

/// Sobolev exponent s with s > 3/2.
class SobolevIndex {
 public:
  explicit SobolevIndex(double s = kDefaultSobolevIndex);
  double value() const noexcept { return s_; }

 private:
  double s_;
};

using Spectrum = std::vector<std::complex<double>>;

/// Half-spectrum coefficients c_k, k = 0..n/2, of f = sum_k c_k exp(i xi_k x).
Spectrum forward_transform(const ScalarField& f);
/// Inverse of forward_transform; the imaginary residue is discarded.
ScalarField inverse_transform(const Grid& grid, const Spectrum& coefficients);

/// Spectral derivative of the given order; the Nyquist mode is dropped for odd orders.
ScalarField derivative(const ScalarField& f, int order);

/// Solves (1 - d^2/dx^2) g = f.
ScalarField helmholtz_inverse(const ScalarField& f);

/// (sum_k (1 + xi_k^2)^s |c_k|^2 L)^{1/2}; the L^2 norm on [0, L) for s = 0.
double sobolev_norm(const ScalarField& f, double s);
inline double sobolev_norm(const ScalarField& f, SobolevIndex s) { return sobolev_norm(f, s.value()); }

/// Zeroes every mode above the 2/3 cutoff.
ScalarField dealias(const ScalarField& f);

/// Pointwise product followed by the 2/3 truncation.
ScalarField multiply_dealiased(const ScalarField& f, const ScalarField& g);

/// Exponential filter exp(-strength (k/k_max)^order).
ScalarField exponential_filter(const ScalarField& f, int order = 36, double strength = 36.0);

}  // namespace bfamily
