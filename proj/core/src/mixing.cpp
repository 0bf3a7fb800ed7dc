#include "majdyn/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

#include "majdyn/errors.hpp"
#include "majdyn/rng.hpp"

namespace majdyn {

namespace {

constexpr double kClampLo = 1e-15;
constexpr double kClampHi = 1.0 - 1e-15;

int cell_of(const Grid& grid, double x) {
  int i = static_cast<int>(x * grid.n_cells());
  return std::clamp(i, 0, grid.n_cells() - 1);
}

}  // namespace

double Observable::at(double x) const { return values[cell_of(grid, x)]; }

Observable to_observable(const Density& d, std::string id) {
  return Observable{std::move(id), d.grid(),
                    {d.values().begin(), d.values().end()}};
}

Observable make_observable(const std::string& name, Grid grid) {
  Observable o{name, grid, std::vector<double>(grid.n_cells())};
  for (int i = 0; i < grid.n_cells(); ++i) {
    const double x = grid.center(i);
    if (name == "one") {
      o.values[i] = 1.0;
    } else if (name == "centered_x") {
      o.values[i] = x - 0.5;
    } else if (name == "cos1") {
      o.values[i] = std::cos(2.0 * std::numbers::pi * x);
    } else if (name == "sin1") {
      o.values[i] = std::sin(2.0 * std::numbers::pi * x);
    } else {
      throw std::invalid_argument("make_observable: unknown observable '" +
                                  name + "'");
    }
  }
  return o;
}

double MapSystem::apply(double x) const {
  return std::clamp(map(x), kClampLo, kClampHi);
}

MapSystem logistic_map(std::uint64_t seed) {
  return {"logistic", [](double x) { return 4.0 * x * (1.0 - x); }, {}, seed};
}

MapSystem doubling_map(std::uint64_t seed) {
  return {"doubling",
          [](double x) {
            const double y = 2.0 * x;
            return y < 1.0 ? y : y - 1.0;
          },
          {},
          seed};
}

MapSystem tent_map(std::uint64_t seed) {
  return {"tent", [](double x) { return 1.0 - std::abs(2.0 * x - 1.0); }, {},
          seed};
}

MapSystem rotation_map(double alpha, std::uint64_t seed) {
  return {"rotation",
          [alpha](double x) {
            const double y = x + alpha;
            return y - std::floor(y);
          },
          {},
          seed};
}

MapSystem make_map(const std::string& spec, std::uint64_t seed) {
  if (spec == "logistic") return logistic_map(seed);
  if (spec == "doubling") return doubling_map(seed);
  if (spec == "tent") return tent_map(seed);
  if (spec.rfind("rotation:", 0) == 0) {
    const double alpha = std::stod(spec.substr(9));
    return rotation_map(alpha, seed);
  }
  if (spec == "rotation") {
    // Golden-ratio rotation by default: maximally non-resonant.
    return rotation_map((std::sqrt(5.0) - 1.0) / 2.0, seed);
  }
  throw std::invalid_argument("make_map: unknown map '" + spec + "'");
}

Density estimate_invariant_density(const MapSystem& sys,
                                   std::int64_t n_transient,
                                   std::int64_t n_samples, Grid grid,
                                   double orbit_dither) {
  if (n_samples < 10'000) {
    throw std::invalid_argument(
        "estimate_invariant_density: need at least 1e4 samples");
  }
  if (n_transient < 0) {
    throw std::invalid_argument(
        "estimate_invariant_density: negative transient");
  }
  std::mt19937_64 rng(sys.seed);
  double x = std::clamp(uniform01(rng), kClampLo, kClampHi);
  auto advance = [&](double y) {
    y = sys.apply(y);
    if (orbit_dither > 0.0) {
      y = std::clamp(y + uniform_range(rng, -orbit_dither, orbit_dither),
                     kClampLo, kClampHi);
    }
    return y;
  };
  for (std::int64_t k = 0; k < n_transient; ++k) x = advance(x);

  std::vector<double> counts(grid.n_cells(), 0.0);
  std::set<int> visited;
  for (std::int64_t k = 0; k < n_samples; ++k) {
    x = advance(x);
    const int c = cell_of(grid, x);
    counts[c] += 1.0;
    if (visited.size() < 2) visited.insert(c);
  }
  if (visited.size() < 2) {
    throw DegenerateOrbit(
        "estimate_invariant_density: orbit stuck in a single cell (map '" +
        sys.name + "')");
  }
  // Normalize counts to a probability density: value = freq / h.
  const double scale =
      static_cast<double>(grid.n_cells()) / static_cast<double>(n_samples);
  for (double& c : counts) c *= scale;
  return Density(grid, std::move(counts));
}

double correlation(const MapSystem& sys, const Observable& f,
                   const Observable& g, int n, std::int64_t n_points) {
  if (f.grid != g.grid) {
    throw GridMismatch("correlation: observable grids differ");
  }
  if (n < 0) throw std::invalid_argument("correlation: n must be >= 0");
  if (n_points < 1) throw std::invalid_argument("correlation: no nodes");
  const double w = 1.0 / static_cast<double>(n_points);
  double s = 0.0;
  for (std::int64_t j = 0; j < n_points; ++j) {
    const double x = (j + 0.5) * w;
    double y = x;
    for (int k = 0; k < n; ++k) y = sys.apply(y);
    s += f.at(y) * g.at(x);
  }
  return s * w;
}

std::vector<double> correlation_sequence(const MapSystem& sys,
                                         const Observable& f,
                                         const Observable& g, int n_max,
                                         std::int64_t n_points) {
  if (f.grid != g.grid) {
    throw GridMismatch("correlation_sequence: observable grids differ");
  }
  if (n_max < 0) throw std::invalid_argument("correlation_sequence: n_max < 0");
  if (n_points < 1) throw std::invalid_argument("correlation_sequence: no nodes");
  const double w = 1.0 / static_cast<double>(n_points);
  std::vector<double> g_at(n_points);
  std::vector<double> y(n_points);
  for (std::int64_t j = 0; j < n_points; ++j) {
    const double x = (j + 0.5) * w;
    g_at[j] = g.at(x);
    y[j] = x;
  }
  std::vector<double> out;
  out.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    double s = 0.0;
    for (std::int64_t j = 0; j < n_points; ++j) s += f.at(y[j]) * g_at[j];
    out.push_back(s * w);
    if (n < n_max) {
      for (std::int64_t j = 0; j < n_points; ++j) y[j] = sys.apply(y[j]);
    }
  }
  return out;
}

std::vector<double> l1_norm_sequence(const MapSystem& sys, const Observable& f,
                                     int n_max, std::int64_t n_points) {
  if (n_max < 1) throw std::invalid_argument("l1_norm_sequence: n_max < 1");
  if (n_points < 1) throw std::invalid_argument("l1_norm_sequence: no nodes");
  const double w = 1.0 / static_cast<double>(n_points);
  std::vector<double> y(n_points);
  for (std::int64_t j = 0; j < n_points; ++j) y[j] = (j + 0.5) * w;
  std::vector<double> out;
  out.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    double s = 0.0;
    for (std::int64_t j = 0; j < n_points; ++j) s += std::abs(f.at(y[j]));
    out.push_back(s * w);
    if (n < n_max) {
      for (std::int64_t j = 0; j < n_points; ++j) y[j] = sys.apply(y[j]);
    }
  }
  return out;
}

MixingReport mixing_verdict(const MapSystem& sys,
                            const std::vector<Observable>& observables,
                            int n_max, double tol, std::int64_t n_points) {
  if (observables.size() < 2) {
    throw std::invalid_argument("mixing_verdict: need at least 2 observables");
  }
  if (n_max < 1) throw std::invalid_argument("mixing_verdict: n_max < 1");
  const std::size_t n_obs = observables.size();
  for (const auto& o : observables) {
    if (o.grid != observables.front().grid) {
      throw GridMismatch("mixing_verdict: observable grids differ");
    }
  }

  const Density f_star =
      sys.invariant_density_estimate
          ? *sys.invariant_density_estimate
          : estimate_invariant_density(sys, 10'000, 1'000'000, Grid(256));
  const Observable f_star_obs = to_observable(f_star, "f_star");

  MixingReport report;
  report.n_max = n_max;
  report.tol = tol;
  report.tail_window = std::max(2, n_max / 5);
  report.all_consistent = true;

  // One shared orbit sweep: all ordered pairs are accumulated per step.
  const double w = 1.0 / static_cast<double>(n_points);
  std::vector<double> y(n_points);
  std::vector<std::vector<double>> g_at(n_obs,
                                        std::vector<double>(n_points));
  std::vector<double> limits(n_obs, 0.0);
  for (std::int64_t j = 0; j < n_points; ++j) {
    const double x = (j + 0.5) * w;
    y[j] = x;
    for (std::size_t i = 0; i < n_obs; ++i) g_at[i][j] = observables[i].at(x);
    for (std::size_t i = 0; i < n_obs; ++i) {
      limits[i] += f_star_obs.at(x) * g_at[i][j];
    }
  }
  for (double& l : limits) l *= w;

  // corr[fi][gi][n]
  std::vector<std::vector<std::vector<double>>> corr(
      n_obs, std::vector<std::vector<double>>(n_obs));
  std::vector<double> f_at_y(n_points);
  for (int n = 0; n <= n_max; ++n) {
    for (std::size_t fi = 0; fi < n_obs; ++fi) {
      const Observable& f = observables[fi];
      for (std::int64_t j = 0; j < n_points; ++j) f_at_y[j] = f.at(y[j]);
      for (std::size_t gi = 0; gi < n_obs; ++gi) {
        double s = 0.0;
        for (std::int64_t j = 0; j < n_points; ++j) {
          s += f_at_y[j] * g_at[gi][j];
        }
        corr[fi][gi].push_back(s * w);
      }
    }
    if (n < n_max) {
      for (std::int64_t j = 0; j < n_points; ++j) y[j] = sys.apply(y[j]);
    }
  }

  for (std::size_t fi = 0; fi < n_obs; ++fi) {
    for (std::size_t gi = 0; gi < n_obs; ++gi) {
      PairVerdict pv;
      pv.pair_id = observables[fi].id + ":" + observables[gi].id;
      pv.corr = std::move(corr[fi][gi]);
      pv.limit = limits[gi];

      pv.n_settle = -1;
      pv.violating_n = -1;
      for (int n = n_max; n >= 0; --n) {
        if (std::abs(pv.corr[n] - pv.limit) > tol) {
          pv.violating_n = n;
          break;
        }
      }
      if (pv.violating_n < n_max) pv.n_settle = pv.violating_n + 1;
      pv.worst_tail_abs_err = 0.0;
      for (int n = std::max(0, n_max - report.tail_window + 1); n <= n_max;
           ++n) {
        pv.worst_tail_abs_err =
            std::max(pv.worst_tail_abs_err, std::abs(pv.corr[n] - pv.limit));
      }
      // Consistency needs the band to hold over at least the tail window;
      // one lucky in-band endpoint is not settling.
      pv.consistent =
          pv.n_settle >= 0 && pv.n_settle <= n_max - report.tail_window + 1;
      report.all_consistent = report.all_consistent && pv.consistent;
      report.pairs.push_back(std::move(pv));
    }
  }
  return report;
}

}  // namespace majdyn
