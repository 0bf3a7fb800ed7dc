#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "majdyn/convex_bank.hpp"
#include "majdyn/majorization.hpp"
#include "majdyn/trajectory.hpp"

namespace majdyn {

/// One row of report.csv: a single check on a snapshot pair (or a single
/// snapshot, for stationary residuals). phi_id carries either the battery
/// member id or a comparison witness like "cum[37]" / "mass".
struct CheckRecord {
  std::string check;
  double t1;
  double t2;
  std::string phi_id;
  double value;
  bool pass;
};

struct SandwichSummary {
  bool strict_holds;
  bool weak_holds;
  /// True when p_inf was taken to be the last snapshot rather than a
  /// supplied stationary state; the lower bound is then a surrogate for the
  /// true infimum.
  bool asymptotic_surrogate;
  double max_residual;  ///< max |lambda'| over differentiable battery phi
};

struct ChainReport {
  std::optional<bool> chain_holds;
  std::optional<bool> weak_chain_holds;
  std::optional<bool> msl_holds;
  std::optional<bool> sl_holds;  ///< set only when x ln x is in the battery
  std::vector<CheckRecord> records;
  std::optional<SandwichSummary> sandwich;
  /// |lambda'| at the final snapshot per differentiable battery member.
  std::vector<std::pair<std::string, double>> stationary_residuals;
  /// Definitional cross-checks: chain => msl, and msl with x ln x => sl.
  /// False indicates an internal inconsistency (tolerance pathology), never
  /// a property of the data.
  bool internally_consistent = true;

  std::vector<CheckRecord> violations() const;
  void merge(const ChainReport& other);
};

/// lambda_phi of every snapshot for every battery member;
/// result[k][j] = lambda of snapshot k under member j.
std::vector<std::vector<double>> lambda_table(const Trajectory& traj,
                                              const Battery& battery);

/// Check that later snapshots are majorized by earlier ones: all adjacent
/// pairs, plus long_range_pairs random non-adjacent pairs as a transitivity
/// spot check (or every pair when full_pairwise). Fills chain_holds and
/// weak_chain_holds; each failure is recorded with its witness.
ChainReport verify_chain(const Trajectory& traj, double tol = kCompareTol,
                         int long_range_pairs = 16, std::uint64_t seed = 1,
                         bool full_pairwise = false);

/// Evaluate the lambda table and require every adjacent step of every
/// battery member to be non-increasing within tol. sl_holds tracks the
/// x ln x column alone (entropy non-decreasing), when present.
ChainReport verify_msl(const Trajectory& traj, const Battery& battery,
                       double tol = 1e-8);

/// Evaluates |lambda'| at a density, using whatever closed form the source
/// dynamics provides. The default (finite differences over the last
/// snapshots) is used for file-sourced trajectories.
using ResidualFn =
    std::function<double(const Density& p, const ConvexTestFn& phi)>;

/// Check p_inf ≼ p_t ≼ p_0 for every snapshot (strict and weak variants),
/// and the stationarity residuals lambda' at p_inf for every differentiable
/// battery member. p_inf defaults to the last snapshot (asymptotic
/// surrogate).
ChainReport verify_sandwich(const Trajectory& traj,
                            const std::optional<Density>& p_inf,
                            const Battery& battery, double tol = kCompareTol,
                            const ResidualFn& residual = {},
                            double residual_tol = 1e-8);

/// Agreement between the pairwise-order verdict (verify_chain) and the
/// monotone-certificate verdict (verify_msl over the battery). Disagreement
/// is possible only because the battery is finite; it is reported as a
/// battery gap, never as a contradiction. Requires >= 3 snapshots.
struct EquivalenceResult {
  bool agree;
  bool chain_holds;
  bool msl_holds;
  bool battery_gap;  ///< msl passed but the pairwise order failed
};
EquivalenceResult verify_lemma1_equivalence(const Trajectory& traj,
                                            const Battery& battery,
                                            double chain_tol = kCompareTol,
                                            double lambda_tol = 1e-8);

struct VerifyOptions {
  double tol_compare = kCompareTol;
  double tol_lambda = 1e-8;
  double tol_residual = 1e-8;
  int long_range_pairs = 16;
  std::uint64_t seed = 1;
  bool full_pairwise = false;
  /// Certify the weak chain (decaying-mass trajectories) instead of the
  /// strict one.
  bool weak = false;
};

/// Run chain, msl and sandwich checks and merge the reports. `requested_ok`
/// of the result is the certification verdict for the requested mode
/// (strict: chain+msl+sl+sandwich; weak: weak chain + msl + weak sandwich).
struct FullVerdict {
  ChainReport report;
  bool requested_ok;
};
FullVerdict verify_all(const Trajectory& traj, const Battery& battery,
                       const VerifyOptions& opts,
                       const std::optional<Density>& p_inf = {},
                       const ResidualFn& residual = {});

}  // namespace majdyn
