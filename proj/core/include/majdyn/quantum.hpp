#pragma once

#include <complex>
#include <span>
#include <vector>

#include "majdyn/convex_bank.hpp"
#include "majdyn/density.hpp"
#include "majdyn/trajectory.hpp"

namespace majdyn {

/// One eigenmode of a (possibly non-Hermitian) Hamiltonian with complex
/// energy epsilon + i*gamma. The mode evolves in closed form, so
/// |psi(x,t)|^2 = |psi0(x)|^2 * exp(2*gamma*t/hbar): gamma = 0 leaves the
/// probability density frozen, gamma < 0 drains it uniformly in x.
class QuantumMode {
 public:
  QuantumMode(Grid grid, std::vector<std::complex<double>> psi0,
              double epsilon, double gamma, double hbar = 1.0);

  /// psi0 ∝ sin(k*pi*x), vanishing at both ends of (0,1).
  static QuantumMode sine(Grid grid, int k, double epsilon, double gamma,
                          double hbar = 1.0);
  /// Normalized Gaussian bump centered at 1/2.
  static QuantumMode gaussian(Grid grid, double width, double epsilon,
                              double gamma, double hbar = 1.0);

  const Grid& grid() const { return grid_; }
  std::span<const std::complex<double>> psi0() const { return psi0_; }
  double epsilon() const { return epsilon_; }
  double gamma() const { return gamma_; }
  double hbar() const { return hbar_; }
  /// |psi0|^2, normalized to unit mass at construction.
  const Density& density0() const { return density0_; }

 private:
  Grid grid_;
  std::vector<std::complex<double>> psi0_;
  double epsilon_;
  double gamma_;
  double hbar_;
  Density density0_;
};

/// |psi(x,t)|^2 on the mode's grid; t >= 0. For gamma = 0 the result is
/// bit-identical to density0 at every t.
Density mode_density(const QuantumMode& mode, double t);

/// Time derivative of ∫ phi(|psi|^2) dx in closed form:
///   (2*gamma/hbar) ∫ phi'(|psi|^2) |psi|^2 dx.
double quantum_lambda_prime(const QuantumMode& mode, double t,
                            const ConvexTestFn& phi);

/// Decay-rate bound check for a decaying mode (gamma < 0) and an increasing
/// differentiable phi. The certified right-hand side carries the norm at
/// time t:  rhs = (2*gamma/hbar) * phi'(0) * mass(t); it always dominates
/// lhs for increasing convex phi. rhs_bare drops the norm factor (the two
/// coincide at t = 0) and is reported because it can fail once mass has
/// decayed.
struct BoundCheck {
  double lhs;       ///< quantum_lambda_prime at t
  double rhs;       ///< norm-corrected bound
  double rhs_bare;  ///< bound without the mass factor
  bool holds;       ///< lhs <= rhs + 1e-12
};
BoundCheck nonhermitian_bound_check(const QuantumMode& mode, double t,
                                    const ConvexTestFn& phi);

/// Snapshots of mode_density at the given times (sorted, nonnegative).
Trajectory quantum_trajectory(const QuantumMode& mode,
                              std::span<const double> snapshot_times);

}  // namespace majdyn
