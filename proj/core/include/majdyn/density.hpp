#pragma once

#include <functional>
#include <span>
#include <vector>

#include "majdyn/grid.hpp"

namespace majdyn {

/// Tolerance on |mass - 1| for a grid function to count as a probability
/// density, and the default mass-equality tolerance in comparisons.
inline constexpr double kNormTol = 1e-9;

/// Nonnegative piecewise-constant function on a Grid.
///
/// Immutable after construction. The mass h * sum(values) is cached once so
/// that rearrangements and copies carry exactly the same total.
class Density {
 public:
  Density(Grid grid, std::vector<double> values);

  static Density uniform(Grid grid);
  /// All mass concentrated in one cell (value n_cells there, 0 elsewhere).
  static Density delta(Grid grid, int cell);
  /// Sample f at cell centers. Values must come out nonnegative and finite.
  static Density sampled(Grid grid, const std::function<double(double)>& f);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double value(int i) const { return values_[i]; }
  double mass() const { return mass_; }

  bool is_probability(double norm_tol = kNormTol) const;

  /// Same values scaled so the mass is 1. Mass must be positive.
  Density normalized() const;

  /// Values sorted in non-increasing order on the same grid; the cached
  /// mass is carried over unchanged.
  Density rearranged_decreasing() const;

  double max_value() const;
  /// max_i |values[i] - other.values[i]|; grids must match.
  double max_abs_diff(const Density& other) const;

 private:
  struct RawTag {};
  Density(Grid grid, std::vector<double> values, double mass, RawTag);

  Grid grid_;
  std::vector<double> values_;
  double mass_;
};

/// Free-function spelling of Density::rearranged_decreasing.
Density decreasing_rearrangement(const Density& d);

}  // namespace majdyn
