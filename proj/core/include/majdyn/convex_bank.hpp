#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "majdyn/density.hpp"

namespace majdyn {

/// A convex test function phi on [0, inf) with first and second derivative.
///
/// Battery arguments are density *values*, which can exceed 1 on fine
/// features, so members must be convex on all of [0, inf). Members that are
/// not differentiable everywhere (|x|, hinges) carry their a.e. derivatives
/// and are flagged, so derivative-based checks can skip them.
struct ConvexTestFn {
  std::string id;
  std::function<double(double)> eval;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  bool increasing = false;     ///< member of the increasing-convex class
  bool differentiable = true;  ///< d1/d2 valid everywhere on (0, inf)
};

struct Battery {
  std::vector<ConvexTestFn> members;

  const ConvexTestFn* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }
  /// Members with the given ids, in the given order. Throws
  /// std::invalid_argument on an unknown id.
  Battery subset(std::span<const std::string> ids) const;
};

/// The default battery: x ln x (0 ln 0 := 0), x^2, x^{3/2}, x^3, |x|,
/// hinges (x-a)+ for a in {0.25, 0.5, 1, 2, 4}, and exp(x).
Battery standard_battery();

/// Increasing-convex members of the standard battery (hinges, exp) plus the
/// identity x. Used for weak-majorization certification.
Battery icx_battery();

/// Sample vector-valued test functions on n-vectors for spot checks of the
/// "majorized implies smaller under every Schur-convex / symmetric
/// quasi-convex function" direction: max component, sum of squares,
/// negative Shannon entropy, second-largest component.
struct VectorTestFn {
  std::string id;
  std::function<double(std::span<const double>)> eval;
};
std::vector<VectorTestFn> schur_samples(int n);

/// The integral ∫ phi(p(x)) dx by midpoint quadrature (exact for the
/// piecewise-constant densities used here). This is the monotone
/// certificate evaluated along trajectories.
double lambda_phi(const Density& p, const ConvexTestFn& phi);

}  // namespace majdyn
