#pragma once

namespace majdyn {

/// Uniform cell-centered grid on the open interval (0,1).
///
/// Cell i covers (i*h, (i+1)*h) with center x_i = (i + 1/2)*h, h = 1/n_cells.
/// All densities and observables in this library are piecewise constant on
/// such a grid, which makes midpoint quadrature exact and decreasing
/// rearrangement a plain sort.
class Grid {
 public:
  explicit Grid(int n_cells);

  int n_cells() const { return n_; }
  double h() const { return h_; }
  double center(int i) const { return (i + 0.5) * h_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
  double h_;
};

}  // namespace majdyn
