#include "majdyn/fpe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "majdyn/errors.hpp"

namespace majdyn {

FpeModel linear_model(double d_coef) {
  if (d_coef <= 0.0) {
    throw std::invalid_argument("linear_model: D must be positive");
  }
  FpeModel m;
  m.name = "linear";
  m.psi = [](double p) { return p; };
  m.omega = [d_coef](double) { return d_coef; };
  m.omega_max_estimate = d_coef;
  return m;
}

FpeModel porous_model(double d_coef, double nu) {
  if (d_coef <= 0.0) {
    throw std::invalid_argument("porous_model: D must be positive");
  }
  if (nu < 1.0) {
    throw std::invalid_argument("porous_model: nu must be >= 1");
  }
  FpeModel m;
  m.name = "porous";
  m.psi = [](double p) { return p; };
  m.omega = [d_coef, nu](double p) {
    return d_coef * nu * std::pow(p, nu - 1.0);
  };
  m.omega_max_estimate = d_coef * nu * std::pow(2.0, nu - 1.0);
  return m;
}

FpeModel make_fpe_model(const std::string& name, double d_coef, double nu) {
  if (name == "linear") return linear_model(d_coef);
  if (name == "porous") return porous_model(d_coef, nu);
  throw std::invalid_argument("make_fpe_model: unknown model '" + name + "'");
}

namespace {

double max_omega(const FpeModel& model, std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, model.omega(v));
  return m;
}

}  // namespace

Density fpe_step(const Density& p, const FpeModel& model, double dt) {
  const Grid& grid = p.grid();
  const int n = grid.n_cells();
  const double h = grid.h();
  const auto v = p.values();

  if (!(dt > 0.0)) {
    throw std::invalid_argument("fpe_step: dt must be positive");
  }
  const double omega_now = max_omega(model, v);
  if (omega_now > 0.0) {
    const double bound = h * h / (2.0 * omega_now);
    if (dt > bound * (1.0 + 1e-12)) {
      throw StabilityViolation("fpe_step: dt = " + std::to_string(dt) +
                               " exceeds the stability bound " +
                               std::to_string(bound));
    }
  }

  // Face fluxes J[i] on x = i*h, i = 0..n; zero at both boundaries.
  std::vector<double> flux(n + 1, 0.0);
  for (int i = 0; i + 1 < n; ++i) {
    const double grad = (v[i + 1] - v[i]) / h;
    const double omega_face = 0.5 * (model.omega(v[i]) + model.omega(v[i + 1]));
    double j = -omega_face * grad;
    if (model.has_drift()) {
      const double f = model.force((i + 1) * h);
      const double psi_up = f >= 0.0 ? model.psi(v[i]) : model.psi(v[i + 1]);
      j += f * psi_up;
    }
    flux[i + 1] = j;
  }

  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double x = v[i] - dt / h * (flux[i + 1] - flux[i]);
    if (x < 0.0) {
      if (x < -1e-13) {
        throw NegativeDensity("fpe_step: cell " + std::to_string(i) +
                              " went negative (" + std::to_string(x) + ")");
      }
      x = 0.0;
    }
    out[i] = x;
  }
  return Density(grid, std::move(out));
}

Trajectory fpe_evolve(const Density& p0, const FpeModel& model,
                      const FpeRunConfig& cfg) {
  if (!p0.is_probability()) {
    throw std::invalid_argument("fpe_evolve: p0 is not a probability density");
  }
  if (!(cfg.safety > 0.0 && cfg.safety <= 1.0)) {
    throw std::invalid_argument("fpe_evolve: safety must be in (0, 1]");
  }
  if (cfg.snapshot_times.empty()) {
    throw std::invalid_argument("fpe_evolve: no snapshot times");
  }
  for (std::size_t i = 0; i < cfg.snapshot_times.size(); ++i) {
    const double t = cfg.snapshot_times[i];
    if (t < 0.0 || t > cfg.t_end) {
      throw std::invalid_argument(
          "fpe_evolve: snapshot times must lie in [0, t_end]");
    }
    if (i > 0 && t <= cfg.snapshot_times[i - 1]) {
      throw std::invalid_argument(
          "fpe_evolve: snapshot times must be strictly increasing");
    }
  }

  const double h = p0.grid().h();
  double omega_est = std::max(model.omega_max_estimate,
                              max_omega(model, p0.values()));
  auto auto_dt = [&] { return cfg.safety * h * h / (2.0 * omega_est); };
  if (cfg.dt > 0.0 && cfg.dt > auto_dt() * (1.0 + 1e-12)) {
    throw StabilityViolation(
        "fpe_evolve: configured dt exceeds safety*h^2/(2*Omega)");
  }

  // Positivity spot check of the model functionals over the initial values.
  for (double v : p0.values()) {
    if (v > 0.0 && (model.omega(v) <= 0.0 || model.psi(v) <= 0.0)) {
      throw std::invalid_argument(
          "fpe_evolve: model functionals must be positive for positive p");
    }
  }

  Trajectory traj(TrajectorySource::fpe);
  Density p = p0;
  double t = 0.0;
  long steps = 0;
  double dt = cfg.dt > 0.0 ? cfg.dt : auto_dt();
  double last_recorded = -1.0;
  for (double t_req : cfg.snapshot_times) {
    while (t_req - t > dt / 2.0) {
      p = fpe_step(p, model, dt);
      t += dt;
      if (++steps % 100 == 0 && cfg.dt <= 0.0) {
        omega_est = std::max(max_omega(model, p.values()), 1e-300);
        dt = auto_dt();
      }
    }
    // Nearest-step capture; if two requested times fall on one step,
    // record it once.
    if (t > last_recorded) {
      traj.append(t, p);
      last_recorded = t;
    }
  }
  return traj;
}

double lambda_prime_rhs(const Density& p, const FpeModel& model,
                        const ConvexTestFn& phi) {
  if (!phi.differentiable) {
    throw NonDifferentiablePhi("lambda_prime_rhs: phi '" + phi.id +
                               "' is not differentiable");
  }
  const int n = p.grid().n_cells();
  const double h = p.grid().h();
  const auto v = p.values();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    double grad;
    if (i == 0) {
      grad = (v[1] - v[0]) / h;
    } else if (i == n - 1) {
      grad = (v[n - 1] - v[n - 2]) / h;
    } else {
      grad = (v[i + 1] - v[i - 1]) / (2.0 * h);
    }
    // Flat cells contribute nothing; skipping them avoids 0 * inf when
    // phi'' blows up at a zero of p (x ln x on densities with empty cells).
    if (grad == 0.0) continue;
    s += phi.d2(v[i]) * model.omega(v[i]) * grad * grad;
  }
  return -h * s;
}

}  // namespace majdyn
