#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "majdyn/chain_verifier.hpp"
#include "majdyn/density.hpp"
#include "majdyn/mixing.hpp"
#include "majdyn/trajectory.hpp"

namespace majdyn::io {

/// Shortest decimal form that round-trips the exact double value.
std::string format_double(double v);

/// Two-column CSV "x_center,value", one row per cell.
void write_density(const std::filesystem::path& path, const Density& d);
Density read_density(const std::filesystem::path& path);
/// Same format, signed values allowed.
Observable read_observable(const std::filesystem::path& path, std::string id);

/// Snapshots written as <dir>/t_<time>.csv with shortest round-trip times.
void save_trajectory(const Trajectory& traj, const std::filesystem::path& dir);

/// Load from a directory (its t_*.csv files) or a glob pattern with '*'
/// wildcards in the filename part. Files are ordered by the time parsed
/// from the name, not by filename order; zero matches or non-increasing
/// times are errors.
Trajectory load_trajectory(const std::string& dir_or_glob);

struct LambdaRow {
  double t;
  std::string phi_id;
  double lambda;
  std::optional<double> lambda_prime;  ///< empty for non-differentiable phi
};
/// Columns: t,phi_id,lambda,lambda_prime_rhs (last empty when absent).
void write_lambda_csv(const std::filesystem::path& path,
                      const std::vector<LambdaRow>& rows);

struct BoundRow {
  double t;
  std::string phi_id;
  double lhs;
  double rhs;
  bool holds;
};
/// Columns: t,phi_id,lhs,rhs,holds.
void write_bound_csv(const std::filesystem::path& path,
                     const std::vector<BoundRow>& rows);

/// Columns: check,t1,t2,phi_id,value,pass (t1/t2 empty where not
/// applicable, pass as 1/0).
void write_report_csv(const std::filesystem::path& path,
                      const ChainReport& report);

/// Columns: n,pair_id,value,limit,abs_err.
void write_correlations_csv(const std::filesystem::path& path,
                            const MixingReport& report);

}  // namespace majdyn::io
