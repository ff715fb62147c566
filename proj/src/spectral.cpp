#include "bfamily/spectral.hpp"

#include <cmath>
#include <string>

#include "bfamily/errors.hpp"
#include "fft.hpp"

namespace bfamily {

SobolevIndex::SobolevIndex(double s) : s_(s) {
  if (!(s > 1.5) || !std::isfinite(s)) {
    throw Error(ErrorCategory::InvalidArgument,
                "Sobolev index must exceed 3/2, got " + std::to_string(s));
  }
}

Spectrum forward_transform(const ScalarField& f) {
  const Grid& g = f.grid();
  Spectrum c(g.modes());
  detail::fft_forward(f.values(), c);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& z : c) z *= scale;
  return c;
}

ScalarField inverse_transform(const Grid& grid, const Spectrum& coefficients) {
  if (coefficients.size() != grid.modes()) {
    throw Error(ErrorCategory::InvalidArgument, "spectrum length does not match grid");
  }
  Spectrum work = coefficients;
  ScalarField out(grid);
  detail::fft_backward(work, out.values());
  return out;
}

ScalarField derivative(const ScalarField& f, int order) {
  if (order <= 0) {
    throw Error(ErrorCategory::InvalidArgument,
                "derivative order must be positive, got " + std::to_string(order));
  }
  const Grid& g = f.grid();
  Spectrum c = forward_transform(f);
  for (std::size_t k = 0; k < c.size(); ++k) {
    std::complex<double> m = 1.0;
    const std::complex<double> ik(0.0, g.wavenumber(k));
    for (int p = 0; p < order; ++p) m *= ik;
    c[k] *= m;
  }
  if (order % 2 == 1) c.back() = 0.0;
  return inverse_transform(g, c);
}

ScalarField helmholtz_inverse(const ScalarField& f) {
  const Grid& g = f.grid();
  Spectrum c = forward_transform(f);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double xi = g.wavenumber(k);
    c[k] /= 1.0 + xi * xi;
  }
  return inverse_transform(g, c);
}

double sobolev_norm(const ScalarField& f, double s) {
  if (!(s >= 0.0)) {
    throw Error(ErrorCategory::InvalidArgument,
                "Sobolev exponent must be non-negative, got " + std::to_string(s));
  }
  const Grid& g = f.grid();
  const Spectrum c = forward_transform(f);
  const std::size_t nyquist = c.size() - 1;
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double xi = g.wavenumber(k);
    const double weight = (k == 0 || k == nyquist) ? 1.0 : 2.0;
    sum += weight * std::pow(1.0 + xi * xi, s) * std::norm(c[k]);
  }
  return std::sqrt(sum * g.length());
}

ScalarField dealias(const ScalarField& f) {
  const Grid& g = f.grid();
  Spectrum c = forward_transform(f);
  for (std::size_t k = g.dealias_cutoff() + 1; k < c.size(); ++k) c[k] = 0.0;
  return inverse_transform(g, c);
}

ScalarField multiply_dealiased(const ScalarField& f, const ScalarField& g) {
  return dealias(pointwise_product(f, g));
}

ScalarField exponential_filter(const ScalarField& f, int order, double strength) {
  const Grid& g = f.grid();
  Spectrum c = forward_transform(f);
  const double kmax = static_cast<double>(c.size() - 1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] *= std::exp(-strength * std::pow(static_cast<double>(k) / kmax, order));
  }
  return inverse_transform(g, c);
}

}  // namespace bfamily
