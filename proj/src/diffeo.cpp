#include "bfamily/diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bfamily/errors.hpp"
#include "bfamily/spectral.hpp"
#include "bfamily/spline.hpp"

namespace bfamily {

Diffeo::Parts Diffeo::build(ScalarField displacement) {
  if (!displacement.is_finite()) {
    throw Error(ErrorCategory::BlowUp, "diffeomorphism displacement is not finite");
  }
  const Grid& g = displacement.grid();
  Spectrum c = forward_transform(displacement);
  Spectrum cx = c;
  for (std::size_t k = 0; k < cx.size(); ++k) cx[k] *= std::complex<double>(0.0, g.wavenumber(k));
  cx.back() = 0.0;
  cx.front() += 1.0;
  ScalarField jac = inverse_transform(g, cx);
  PeriodicSpline spline = PeriodicSpline::from_spectrum(g, std::move(c));
  return {std::move(displacement), std::move(jac), std::move(spline)};
}

Diffeo::Diffeo(ScalarField displacement) : Diffeo(build(std::move(displacement))) {}

Diffeo::Diffeo(Parts&& parts)
    : displacement_(std::move(parts.displacement)),
      jacobian_(std::move(parts.jacobian)),
      spline_(std::move(parts.spline)) {
  const auto vals = jacobian_.values();
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  min_jacobian_ = *lo;
  max_jacobian_ = *hi;
  argmin_ = static_cast<std::size_t>(lo - vals.begin());
}

Diffeo Diffeo::identity(const Grid& grid) { return Diffeo(ScalarField(grid)); }

Diffeo Diffeo::shift(const Grid& grid, double offset) { return Diffeo(ScalarField(grid, offset)); }

std::vector<double> Diffeo::positions() const {
  std::vector<double> p(grid().size());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = grid().x(j) + displacement_[j];
  return p;
}

Validation validate(const Diffeo& phi, double margin) {
  return {phi.min_jacobian() > margin, phi.min_jacobian(), phi.grid().x(phi.argmin_jacobian())};
}

void require_valid(const Diffeo& phi, double margin) {
  const Validation v = validate(phi, margin);
  if (!v.valid) {
    throw Error(ErrorCategory::InvalidDiffeo,
                "not a diffeomorphism: min phi_x = " + std::to_string(v.min_jacobian) +
                    " at x = " + std::to_string(v.argmin_x));
  }
}

ScalarField compose(const ScalarField& f, const Diffeo& phi) {
  require_same_grid(f, phi.displacement(), "compose");
  require_valid(phi);
  const auto pos = phi.positions();
  return PeriodicSpline(f).sample_field(SplineStencil(f.grid(), pos));
}

Diffeo compose(const Diffeo& phi, const Diffeo& psi) {
  // (phi o psi)(x) - x = d_psi(x) + d_phi(psi(x)).
  return Diffeo(psi.displacement() + compose(phi.displacement(), psi));
}

std::vector<double> inverse_positions(const Diffeo& phi) {
  require_valid(phi);
  const Grid& g = phi.grid();
  const std::size_t n = g.size();
  const double L = g.length();
  const double h = g.spacing();
  const auto disp = phi.displacement().values();
  const auto jac = phi.jacobian().values();
  const PeriodicSpline& spline = phi.spline();

  // phi on the extended index range k in [-n, 2n).
  const auto ln = static_cast<long long>(n);
  auto wrap = [&](long long k) {
    return static_cast<std::size_t>(k < 0 ? k + ln : (k >= ln ? k - ln : k));
  };
  auto sample = [&](long long k) { return static_cast<double>(k) * h + disp[wrap(k)]; };

  const double tol = 1e-14 * L;
  std::vector<double> out(n);
  long long k = -ln;
  for (std::size_t j = 0; j < n; ++j) {
    const double target = g.x(j);
    // Targets increase with j, so the bracket index only moves forward.
    while (k + 2 < 2 * ln && sample(k + 1) <= target) ++k;
    const double p_lo = sample(k);
    const double p_hi = sample(k + 1);
    if (!(p_lo <= target && target <= p_hi)) {
      throw Error(ErrorCategory::UnderResolution,
                  "no bracket for the inverse at x = " + std::to_string(target));
    }
    double lo = static_cast<double>(k) * h;
    double hi = lo + h;

    // Cubic Hermite guess for the inverse from values and slopes at the bracket ends.
    const double dp = p_hi - p_lo;
    const double s = dp > 0.0 ? (target - p_lo) / dp : 0.5;
    const double s2 = s * s, s3 = s2 * s;
    const double m_lo = dp / jac[wrap(k)];
    const double m_hi = dp / jac[wrap(k + 1)];
    double y = lo + (-2 * s3 + 3 * s2) * h + (s3 - 2 * s2 + s) * m_lo +
               (s3 - s2) * m_hi;
    if (!(y > lo && y < hi)) y = lo + s * h;

    double residual = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      residual = y + spline(y) - target;
      if (std::abs(residual) <= tol) {
        converged = true;
        break;
      }
      if (residual > 0.0) hi = y; else lo = y;
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(y) + L)) {
        converged = std::abs(residual) <= 1e-10 * L;
        break;
      }
      const double slope = 1.0 + spline.derivative(y);
      double next = slope > 0.0 ? y - residual / slope : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      y = next;
    }
    if (!converged) {
      throw Error(ErrorCategory::UnderResolution,
                  "inverse did not converge at x = " + std::to_string(target) + " (residual " +
                      std::to_string(residual) + "); increase n_points");
    }
    out[j] = y;
  }
  return out;
}

Diffeo invert(const Diffeo& phi) {
  const auto pos = inverse_positions(phi);
  const Grid& g = phi.grid();
  ScalarField disp(g);
  for (std::size_t j = 0; j < pos.size(); ++j) disp[j] = pos[j] - g.x(j);
  return Diffeo(std::move(disp));
}

ScalarField conjugated_derivative(const ScalarField& w, const Diffeo& phi) {
  require_same_grid(w, phi.displacement(), "conjugated_derivative");
  require_valid(phi);
  return pointwise_quotient(derivative(w, 1), phi.jacobian());
}

double evaluate(const Diffeo& phi, double x) { return x + phi.spline()(x); }

double evaluate(const ScalarField& f, double x) { return PeriodicSpline(f)(x); }

}  // namespace bfamily
