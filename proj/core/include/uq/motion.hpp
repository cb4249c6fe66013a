#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uq/geometry.hpp"

namespace uq {

// Speed tolerance for trajectory validation.
inline constexpr double kSpeedTol = 1e-9;

// Piecewise-linear unit-speed-bounded trajectory. Position is held
// constant before the first and after the last waypoint.
struct Trajectory {
  std::vector<std::pair<double, Point>> waypoints;

  Point at(double t) const;
};

struct Scenario {
  int dim = 1;
  double rho = 0.0;
  bool enforce_disjoint = true;
  double horizon = 0.0;  // time interval is [0, horizon]
  std::optional<double> target_time;
  std::vector<Trajectory> trajectories;

  std::size_t size() const { return trajectories.size(); }
};

Configuration configuration_at(const Scenario& scn, double t);

struct Violation {
  std::string what;
};

// Checks waypoint ordering, the speed bound on every segment, and (when
// enforce_disjoint is set) pairwise separations on a time grid of the
// given step fraction of the horizon.
std::vector<Violation> validate(const Scenario& scn,
                                double grid_step_fraction = 0.01);

}  // namespace uq
