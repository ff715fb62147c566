#include "bfamily/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bfamily/errors.hpp"

namespace bfamily {

ScalarField::ScalarField(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error(ErrorCategory::InvalidArgument,
                "field has " + std::to_string(values_.size()) + " samples, grid has " +
                    std::to_string(grid_.size()));
  }
}

ScalarField::ScalarField(Grid grid, double constant) : grid_(grid), values_(grid.size(), constant) {}

ScalarField ScalarField::from_function(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.x(j));
  return ScalarField(grid, std::move(v));
}

bool ScalarField::is_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::abs(x));
  return m;
}

double ScalarField::integral() const noexcept {
  double sum = 0.0;
  for (double x : values_) sum += x;
  return sum * grid_.spacing();
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(*this, other, "addition");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(*this, other, "subtraction");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

ScalarField& ScalarField::operator*=(double factor) noexcept {
  for (double& x : values_) x *= factor;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }
ScalarField operator*(ScalarField a, double factor) { return a *= factor; }
ScalarField operator*(double factor, ScalarField a) { return a *= factor; }

ScalarField pointwise_product(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b, "product");
  ScalarField out = a;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= b[j];
  return out;
}

ScalarField pointwise_quotient(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b, "quotient");
  ScalarField out = a;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] /= b[j];
  return out;
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b, "difference");
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

void require_same_grid(const ScalarField& a, const ScalarField& b, const char* what) {
  if (!(a.grid() == b.grid())) {
    throw Error(ErrorCategory::InvalidArgument, std::string("grid mismatch in ") + what);
  }
}

}  // namespace bfamily
