#pragma once

#include <optional>
#include <span>
#include <string>

#include "majdyn/density.hpp"

namespace majdyn {

/// Default relative tolerance applied to cumulative sums in continuous
/// comparisons. Well above round-off at n_cells <= 1e6, far below any
/// dynamics-induced change.
inline constexpr double kCompareTol = 1e-9;

/// Relation of the first argument f to the second argument g.
///
/// MajorizedBy means f is majorized by g (f is the more spread-out of the
/// pair). Equivalent means both directions hold: equal decreasing
/// rearrangements within tolerance, not pointwise equality.
enum class Relation { Majorizes, MajorizedBy, Equivalent, Incomparable };

const char* to_string(Relation r);

/// Where a comparison failed, for Incomparable verdicts.
struct Witness {
  enum class Kind {
    CumulativeIndex,  ///< value = 1-based k: sum of the k largest cells flips
    HingeThreshold,   ///< value = hinge parameter a of a violating (x-a)+
    MassMismatch,     ///< value = mass(f) - mass(g)
  };
  Kind kind;
  double value;

  std::string describe() const;
};

struct Verdict {
  Relation relation;
  std::optional<Witness> witness;  ///< non-empty whenever Incomparable

  // Diagnostics: how far each direction is from holding. Negative margins
  // mean the direction holds with room to spare.
  double overshoot_fg = 0.0;  ///< max_k cum_f[k] - cum_g[k] (f ≼ g direction)
  double overshoot_gf = 0.0;  ///< max_k cum_g[k] - cum_f[k]
  double mass_difference = 0.0;  ///< mass(f) - mass(g)
};

/// Majorization order on grid densities, decided by the cumulative
/// rearrangement criterion: f is majorized by g iff every partial sum of
/// f's decreasing rearrangement is dominated by g's, with equal totals.
/// Cumulative inequalities are tested within tol*max(1,total); the mass
/// equality within tol.
Verdict compare_continuous(const Density& f, const Density& g,
                           double tol = kCompareTol);

/// Weak majorization: cumulative domination only, no total-mass equality
/// (the full sum is tested as <=, not =).
Verdict compare_weak(const Density& f, const Density& g,
                     double tol = kCompareTol);

/// Discrete majorization of plain vectors: sums of the k largest components,
/// compared in exact arithmetic, with exactly equal totals. Equivalent iff
/// each vector is a permutation of the other.
Verdict compare_discrete(std::span<const double> x, std::span<const double> y);

/// Search the given hinge thresholds for an a with
/// ∫(f-a)+ > ∫(g-a)+ (midpoint quadrature), i.e. a human-readable
/// counterexample to "f majorized by g". Returns the first violating a.
std::optional<double> hinge_witness(const Density& f, const Density& g,
                                    std::span<const double> thresholds);

/// Evenly spaced hinge thresholds spanning [0, max(f.max, g.max)].
std::vector<double> hinge_threshold_grid(const Density& f, const Density& g,
                                         int n_thresholds = 200);

/// Falsification cross-check: decide the order by exhaustively testing the
/// hinge battery plus x^2 and x ln x in both directions, instead of the
/// rearrangement criterion. Much slower; used to corroborate
/// compare_continuous. Violations smaller than the threshold spacing can
/// escape a finite hinge grid, so agreement is guaranteed only for pairs
/// whose margins exceed max_value/(2*(n_thresholds-1)).
Verdict compare_by_battery(const Density& f, const Density& g,
                           int n_thresholds = 200, double tol = kCompareTol);

}  // namespace majdyn
