#include "majdyn/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "majdyn/errors.hpp"

namespace majdyn {

namespace {

// Normalize psi0 so the midpoint quadrature of |psi0|^2 is 1 to round-off,
// then build the cached t = 0 probability density from it.
std::vector<std::complex<double>> normalize_psi(
    const Grid& grid, std::vector<std::complex<double>> psi) {
  if (static_cast<int>(psi.size()) != grid.n_cells()) {
    throw std::invalid_argument("QuantumMode: psi0 size does not match grid");
  }
  double mass = 0.0;
  for (const auto& z : psi) mass += std::norm(z);
  mass *= grid.h();
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("QuantumMode: psi0 is not normalizable");
  }
  const double scale = 1.0 / std::sqrt(mass);
  for (auto& z : psi) z *= scale;
  return psi;
}

Density density_from_psi(const Grid& grid,
                         const std::vector<std::complex<double>>& psi) {
  std::vector<double> v(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) v[i] = std::norm(psi[i]);
  return Density(grid, std::move(v));
}

}  // namespace

QuantumMode::QuantumMode(Grid grid, std::vector<std::complex<double>> psi0,
                         double epsilon, double gamma, double hbar)
    : grid_(grid),
      psi0_(normalize_psi(grid, std::move(psi0))),
      epsilon_(epsilon),
      gamma_(gamma),
      hbar_(hbar),
      density0_(density_from_psi(grid, psi0_)) {
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("QuantumMode: hbar must be positive");
  }
  if (!density0_.is_probability(kNormTol)) {
    throw std::logic_error("QuantumMode: normalization failed");
  }
}

QuantumMode QuantumMode::sine(Grid grid, int k, double epsilon, double gamma,
                              double hbar) {
  if (k < 1 || k >= grid.n_cells()) {
    throw std::invalid_argument(
        "QuantumMode::sine: k must satisfy 1 <= k < n_cells");
  }
  std::vector<std::complex<double>> psi(grid.n_cells());
  for (int i = 0; i < grid.n_cells(); ++i) {
    psi[i] = std::sin(k * std::numbers::pi * grid.center(i));
  }
  return QuantumMode(grid, std::move(psi), epsilon, gamma, hbar);
}

QuantumMode QuantumMode::gaussian(Grid grid, double width, double epsilon,
                                  double gamma, double hbar) {
  if (!(width > 0.0)) {
    throw std::invalid_argument("QuantumMode::gaussian: width must be > 0");
  }
  std::vector<std::complex<double>> psi(grid.n_cells());
  for (int i = 0; i < grid.n_cells(); ++i) {
    const double u = (grid.center(i) - 0.5) / width;
    psi[i] = std::exp(-0.25 * u * u);
  }
  return QuantumMode(grid, std::move(psi), epsilon, gamma, hbar);
}

Density mode_density(const QuantumMode& mode, double t) {
  if (t < 0.0) {
    throw std::invalid_argument("mode_density: t must be nonnegative");
  }
  const double scale = std::exp(2.0 * mode.gamma() * t / mode.hbar());
  std::vector<double> v(mode.density0().values().begin(),
                        mode.density0().values().end());
  for (double& x : v) x *= scale;
  return Density(mode.grid(), std::move(v));
}

double quantum_lambda_prime(const QuantumMode& mode, double t,
                            const ConvexTestFn& phi) {
  if (!phi.differentiable) {
    throw NonDifferentiablePhi("quantum_lambda_prime: phi '" + phi.id +
                               "' is not differentiable");
  }
  const Density p = mode_density(mode, t);
  double s = 0.0;
  for (double v : p.values()) s += phi.d1(v) * v;
  return 2.0 * mode.gamma() / mode.hbar() * mode.grid().h() * s;
}

BoundCheck nonhermitian_bound_check(const QuantumMode& mode, double t,
                                    const ConvexTestFn& phi) {
  if (mode.gamma() >= 0.0) {
    throw PositiveGamma("nonhermitian_bound_check: gamma must be negative");
  }
  if (!phi.differentiable) {
    throw NonDifferentiablePhi("nonhermitian_bound_check: phi '" + phi.id +
                               "' is not differentiable");
  }
  if (!phi.increasing) {
    throw NonIncreasingPhi("nonhermitian_bound_check: phi '" + phi.id +
                           "' is not increasing");
  }
  BoundCheck b;
  b.lhs = quantum_lambda_prime(mode, t, phi);
  const double rate = 2.0 * mode.gamma() / mode.hbar();
  const double mass_t = mode_density(mode, t).mass();
  b.rhs = rate * phi.d1(0.0) * mass_t;
  b.rhs_bare = rate * phi.d1(0.0);
  b.holds = b.lhs <= b.rhs + 1e-12;
  return b;
}

Trajectory quantum_trajectory(const QuantumMode& mode,
                              std::span<const double> snapshot_times) {
  Trajectory traj(TrajectorySource::quantum);
  for (double t : snapshot_times) traj.append(t, mode_density(mode, t));
  return traj;
}

}  // namespace majdyn
