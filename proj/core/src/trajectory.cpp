#include "majdyn/trajectory.hpp"

#include <stdexcept>
#include <string>

#include "majdyn/errors.hpp"

namespace majdyn {

const char* to_string(TrajectorySource s) {
  switch (s) {
    case TrajectorySource::fpe: return "fpe";
    case TrajectorySource::quantum: return "quantum";
    case TrajectorySource::mixing: return "mixing";
    case TrajectorySource::file: return "file";
  }
  return "?";
}

void Trajectory::append(double t, Density p) {
  if (!snapshots_.empty()) {
    if (t <= snapshots_.back().t) {
      throw std::invalid_argument(
          "Trajectory: snapshot times must be strictly increasing (" +
          std::to_string(t) + " after " + std::to_string(snapshots_.back().t) +
          ")");
    }
    if (p.grid() != snapshots_.front().p.grid()) {
      throw GridMismatch("Trajectory: all snapshots must share one grid");
    }
  }
  snapshots_.push_back({t, std::move(p)});
}

const Grid& Trajectory::grid() const {
  if (snapshots_.empty()) {
    throw std::logic_error("Trajectory::grid: empty trajectory");
  }
  return snapshots_.front().p.grid();
}

Trajectory Trajectory::reversed() const {
  Trajectory out(source_);
  if (snapshots_.empty()) return out;
  const double t_last = snapshots_.back().t;
  for (auto it = snapshots_.rbegin(); it != snapshots_.rend(); ++it) {
    out.append(t_last - it->t, it->p);
  }
  return out;
}

}  // namespace majdyn
