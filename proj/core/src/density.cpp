#include "majdyn/density.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "majdyn/errors.hpp"

namespace majdyn {

namespace {

double checked_mass(const Grid& grid, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != grid.n_cells()) {
    throw std::invalid_argument(
        "Density: expected " + std::to_string(grid.n_cells()) +
        " values, got " + std::to_string(values.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Density: non-finite value at cell " +
                                  std::to_string(i));
    }
    if (v < 0.0) {
      throw NegativeDensity("Density: negative value " + std::to_string(v) +
                            " at cell " + std::to_string(i));
    }
    sum += v;
  }
  return grid.h() * sum;
}

}  // namespace

Density::Density(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)), mass_(checked_mass(grid_, values_)) {}

Density::Density(Grid grid, std::vector<double> values, double mass, RawTag)
    : grid_(grid), values_(std::move(values)), mass_(mass) {}

Density Density::uniform(Grid grid) {
  return Density(grid, std::vector<double>(grid.n_cells(), 1.0));
}

Density Density::delta(Grid grid, int cell) {
  if (cell < 0 || cell >= grid.n_cells()) {
    throw std::invalid_argument("Density::delta: cell out of range");
  }
  std::vector<double> v(grid.n_cells(), 0.0);
  v[cell] = static_cast<double>(grid.n_cells());
  return Density(grid, std::move(v));
}

Density Density::sampled(Grid grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.n_cells());
  for (int i = 0; i < grid.n_cells(); ++i) v[i] = f(grid.center(i));
  return Density(grid, std::move(v));
}

bool Density::is_probability(double norm_tol) const {
  return std::abs(mass_ - 1.0) <= norm_tol;
}

Density Density::normalized() const {
  if (mass_ <= 0.0) {
    throw std::invalid_argument("Density::normalized: mass is zero");
  }
  std::vector<double> v(values_);
  for (double& x : v) x /= mass_;
  return Density(grid_, std::move(v));
}

Density Density::rearranged_decreasing() const {
  std::vector<double> v(values_);
  std::sort(v.begin(), v.end(), std::greater<>());
  // Carry the cached mass: sorting must not perturb the total by re-summing
  // in a different order.
  return Density(grid_, std::move(v), mass_, RawTag{});
}

double Density::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

double Density::max_abs_diff(const Density& other) const {
  if (grid_ != other.grid_) {
    throw GridMismatch("max_abs_diff: grids differ");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    m = std::max(m, std::abs(values_[i] - other.values_[i]));
  }
  return m;
}

Density decreasing_rearrangement(const Density& d) {
  return d.rearranged_decreasing();
}

}  // namespace majdyn
