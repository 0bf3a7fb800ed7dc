#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "majdyn/density.hpp"

namespace majdyn {

/// Seeded generators for stress suites. They work on integer values, so
/// partial sums, totals and transfers are exact in double arithmetic;
/// majorization verdicts are invariant under the common scale factor.

/// n integers drawn uniformly from [lo, hi], as doubles.
std::vector<double> random_integer_vector(std::mt19937_64& rng, int n,
                                          std::int64_t lo, std::int64_t hi);

/// Random composition: n nonnegative integers summing exactly to total.
std::vector<double> random_integer_composition(std::mt19937_64& rng, int n,
                                               std::int64_t total);

/// One Robin Hood transfer on integer values: move a random integer amount
/// from a richer entry toward a poorer one, never past their mean. The
/// result is majorized by the input and keeps the exact total. Returns v
/// unchanged when all entries are equal.
std::vector<double> robin_hood_transfer(std::mt19937_64& rng,
                                        std::vector<double> v);

/// n_transfers successive Robin Hood transfers.
std::vector<double> robin_hood_chain(std::mt19937_64& rng,
                                     std::vector<double> v, int n_transfers);

/// Step density with integer values in [lo, hi] (not normalized).
Density random_step_density(std::mt19937_64& rng, Grid grid, std::int64_t lo,
                            std::int64_t hi);

/// Random probability density: an integer composition scaled to unit mass
/// (exact composition arithmetic; the mass lands within a few ulps of 1).
Density random_probability_density(std::mt19937_64& rng, Grid grid);

/// Mixed-family pair generator for order-oracle stress suites. Families:
/// Robin Hood comparable pairs, planted Lorenz crossings (incomparable with
/// equal mass and macroscopic margins on both sides), mass offsets, and
/// permutations. Margins are large by construction, so a 200-point hinge
/// grid always sees the violation.
struct DensityPair {
  Density f;
  Density g;
};
DensityPair random_comparison_pair(std::mt19937_64& rng, Grid grid);

}  // namespace majdyn
