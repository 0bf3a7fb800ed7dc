#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "majdyn/density.hpp"

namespace majdyn {

/// Grid-sampled step-function observable. Unlike Density, values may be
/// signed (correlation diagnostics need mean-centered observables).
struct Observable {
  std::string id;
  Grid grid;
  std::vector<double> values;

  /// Value of the step function at x in (0,1).
  double at(double x) const;
};

Observable to_observable(const Density& d, std::string id = "density");
/// Builtin observables: "one", "centered_x" (x - 1/2), "cos1" (cos 2*pi*x),
/// "sin1" (sin 2*pi*x), sampled at cell centers.
Observable make_observable(const std::string& name, Grid grid);

/// Interval map iterated as the time evolution, one iterate per time unit.
/// Map images are clamped to [1e-15, 1-1e-15] against round-off at the
/// endpoints.
struct MapSystem {
  std::string name;
  std::function<double(double)> map;
  std::optional<Density> invariant_density_estimate;
  std::uint64_t seed = 1;

  double apply(double x) const;
};

MapSystem logistic_map(std::uint64_t seed = 1);   ///< 4x(1-x)
MapSystem doubling_map(std::uint64_t seed = 1);   ///< 2x mod 1
MapSystem tent_map(std::uint64_t seed = 1);       ///< 1 - |2x - 1|
MapSystem rotation_map(double alpha, std::uint64_t seed = 1);  ///< x+a mod 1
/// Parse "logistic" | "doubling" | "tent" | "rotation:<alpha>".
MapSystem make_map(const std::string& spec, std::uint64_t seed = 1);

/// Orbit dither: uniform noise of this half-width is added after each map
/// application when sampling orbits for histograms. Piecewise-dyadic maps
/// (doubling, tent) have floating-point orbits that collapse onto exact
/// periodic cycles; last-bits noise restores representative sampling. The
/// noise is drawn from the system seed, so runs stay bit-reproducible.
inline constexpr double kOrbitDither = 0x1p-32;

/// Normalized histogram of a long orbit after discarding a transient.
/// Throws DegenerateOrbit if the orbit visits fewer than 2 cells.
Density estimate_invariant_density(const MapSystem& sys,
                                   std::int64_t n_transient,
                                   std::int64_t n_samples, Grid grid,
                                   double orbit_dither = kOrbitDither);

/// ∫ f(T^n(x)) g(x) dx by deterministic midpoint quadrature over n_points
/// initial conditions (no dither; pure map iteration). n = 0 reduces to the
/// plain inner product ∫ f g dx.
double correlation(const MapSystem& sys, const Observable& f,
                   const Observable& g, int n, std::int64_t n_points);

/// correlation(sys, f, g, n, n_points) for n = 0..n_max, computed with one
/// incremental orbit sweep.
std::vector<double> correlation_sequence(const MapSystem& sys,
                                         const Observable& f,
                                         const Observable& g, int n_max,
                                         std::int64_t n_points);

/// ∫ |f(T^n(x))| dx for n = 0..n_max.
std::vector<double> l1_norm_sequence(const MapSystem& sys, const Observable& f,
                                     int n_max, std::int64_t n_points);

struct PairVerdict {
  std::string pair_id;          ///< "<f_id>:<g_id>"
  double limit;                 ///< ∫ f_* g dx
  bool consistent;              ///< correlations settled into the band
  int n_settle;                 ///< smallest settling n; -1 if none
  int violating_n;              ///< largest out-of-band n; -1 if none
  double worst_tail_abs_err;    ///< max |corr - limit| over the tail window
  std::vector<double> corr;     ///< corr(n) for n = 0..n_max
};

struct MixingReport {
  std::vector<PairVerdict> pairs;
  bool all_consistent;
  int n_max;
  double tol;
  int tail_window;  ///< trailing points that must sit inside the band
};

/// For every ordered observable pair, compare the correlation sequence
/// against the limit ∫ f_* g dx (f_* from the system estimate, or estimated
/// here with defaults). A pair is Mixing-consistent only if the band holds
/// from some n_settle through n_max with at least tail_window =
/// max(2, n_max/5) trailing points — a single lucky in-band endpoint is not
/// evidence.
MixingReport mixing_verdict(const MapSystem& sys,
                            const std::vector<Observable>& observables,
                            int n_max, double tol, std::int64_t n_points);

}  // namespace majdyn
