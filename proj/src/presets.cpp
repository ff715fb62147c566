#include "bfamily/presets.hpp"

#include <cmath>
#include <numbers>

#include "bfamily/errors.hpp"

namespace bfamily {

double smooth_bump(double y) {
  if (std::abs(y) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - y * y));
}

double smooth_step(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / y);
  const double b = std::exp(-1.0 / (1.0 - y));
  return a / (a + b);
}

namespace {

InitialData gaussian_pair(const Grid& g, double amplitude) {
  const double L = g.length();
  const double cu = 0.45 * L;
  const double cr = 0.525 * L;
  return {ScalarField::from_function(g, [&](double x) { return amplitude * std::exp(-(x - cu) * (x - cu)); }),
          ScalarField::from_function(g, [&](double x) { return 0.5 * std::exp(-(x - cr) * (x - cr)); })};
}

}  // namespace

InitialData make_preset(std::string_view name, const Grid& grid) {
  if (name == "bump-pair") return gaussian_pair(grid, 1.0);
  if (name == "steep-pair") return gaussian_pair(grid, 1.5);
  if (name == "constant") return {ScalarField(grid, 1.0), ScalarField(grid)};
  if (name == "single-mode") {
    const double xi = 2.0 * std::numbers::pi / grid.length();
    return {ScalarField::from_function(grid, [&](double x) { return 0.5 * std::sin(xi * x); }), ScalarField(grid)};
  }
  throw Error(ErrorCategory::Config, "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"bump-pair", "steep-pair", "constant", "single-mode"}; }

}  // namespace bfamily
