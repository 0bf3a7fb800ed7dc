#pragma once

#include <vector>

#include "majdyn/density.hpp"

namespace majdyn {

enum class TrajectorySource { fpe, quantum, mixing, file };

const char* to_string(TrajectorySource s);

struct Snapshot {
  double t;
  Density p;
};

/// Time-ordered sequence of density snapshots from one dynamics run.
/// Times are strictly increasing and all densities share one grid; both
/// invariants are enforced on append.
class Trajectory {
 public:
  explicit Trajectory(TrajectorySource source) : source_(source) {}

  void append(double t, Density p);

  TrajectorySource source() const { return source_; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }
  const Snapshot& operator[](std::size_t i) const { return snapshots_[i]; }
  std::size_t size() const { return snapshots_.size(); }
  bool empty() const { return snapshots_.empty(); }
  const Grid& grid() const;  ///< throws std::logic_error if empty

  /// Same snapshots in reverse time order, re-timed to be increasing
  /// (t_k -> t_last - t_{n-1-k}). Used to build known-violating chains.
  Trajectory reversed() const;

 private:
  TrajectorySource source_;
  std::vector<Snapshot> snapshots_;
};

}  // namespace majdyn
