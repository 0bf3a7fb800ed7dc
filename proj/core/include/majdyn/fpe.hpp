#pragma once

#include <functional>
#include <string>
#include <vector>

#include "majdyn/convex_bank.hpp"
#include "majdyn/density.hpp"
#include "majdyn/trajectory.hpp"

namespace majdyn {

/// Generalized drift-diffusion model
///
///   dp/dt = -d{F(x) Psi[p]}/dx + d/dx{ Omega[p] dp/dx }
///
/// where Psi and Omega act pointwise on the local density value and must be
/// positive for positive arguments. An empty force means F == 0; only that
/// case is a certified order-preserving flow, the drift path is for
/// experimentation.
struct FpeModel {
  std::string name;
  std::function<double(double)> force;  ///< F(x); empty => no drift
  std::function<double(double)> psi;    ///< Psi of the local value
  std::function<double(double)> omega;  ///< Omega of the local value
  double omega_max_estimate = 1.0;      ///< initial value for the dt bound

  bool has_drift() const { return static_cast<bool>(force); }
};

/// Linear diffusion: Omega == D, Psi[p] = p.
FpeModel linear_model(double d_coef);
/// Porous-medium diffusion: Omega[p] = D*nu*p^(nu-1), Psi[p] = p.
/// omega_max_estimate is seeded for values up to p ~ 2; fpe_evolve refreshes
/// it from the run itself.
FpeModel porous_model(double d_coef, double nu);
/// Registry lookup by name: "linear" | "porous".
FpeModel make_fpe_model(const std::string& name, double d_coef, double nu);

struct FpeRunConfig {
  double dt = 0.0;  ///< fixed step; 0 selects safety*h^2/(2*Omega_max)
  double t_end = 0.0;
  std::vector<double> snapshot_times;  ///< strictly increasing, in [0, t_end]
  double safety = 0.9;                 ///< in (0, 1]
};

/// One explicit conservative finite-volume step with zero-flux boundaries.
/// Face flux: upwinded F*Psi minus the arithmetic-mean Omega times the
/// face gradient. Mass is conserved to round-off. Throws StabilityViolation
/// if dt exceeds h^2/(2*max Omega) for the current values, NegativeDensity
/// if an updated value drops below -1e-13 (values in [-1e-13, 0) are
/// clamped to 0).
Density fpe_step(const Density& p, const FpeModel& model, double dt);

/// Repeated fpe_step from a probability density, capturing the snapshot
/// nearest each requested time (recorded with its actual step time). The
/// auto step size is refreshed every 100 steps from the current max Omega.
Trajectory fpe_evolve(const Density& p0, const FpeModel& model,
                      const FpeRunConfig& cfg);

/// Right-hand side of the dissipation identity for the no-drift flow:
///   -∫ phi''(p) Omega[p] (dp/dx)^2 dx   (<= 0 for every convex phi).
/// dp/dx uses centered differences, one-sided at the boundary cells.
/// Equals d/dt ∫ phi(p) dx only when the model has no drift.
double lambda_prime_rhs(const Density& p, const FpeModel& model,
                        const ConvexTestFn& phi);

}  // namespace majdyn
