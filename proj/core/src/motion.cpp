#include "uq/motion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uq {

Point Trajectory::at(double t) const {
  if (waypoints.empty()) throw std::invalid_argument("empty trajectory");
  if (t <= waypoints.front().first) return waypoints.front().second;
  if (t >= waypoints.back().first) return waypoints.back().second;
  // Segments are few per trajectory; a linear scan is fine here, but the
  // simulation loop evaluates positions a lot, so binary-search anyway.
  auto it = std::upper_bound(
      waypoints.begin(), waypoints.end(), t,
      [](double v, const auto& w) { return v < w.first; });
  const auto& [t1, p1] = *(it - 1);
  const auto& [t2, p2] = *it;
  const double f = (t - t1) / (t2 - t1);
  Point out(p1.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = p1[k] + f * (p2[k] - p1[k]);
  return out;
}

Configuration configuration_at(const Scenario& scn, double t) {
  Configuration cfg;
  cfg.dim = scn.dim;
  cfg.rho = scn.rho;
  cfg.enforce_disjoint = scn.enforce_disjoint;
  cfg.centers.reserve(scn.size());
  for (const auto& traj : scn.trajectories) cfg.centers.push_back(traj.at(t));
  return cfg;
}

std::vector<Violation> validate(const Scenario& scn,
                                double grid_step_fraction) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < scn.size(); ++i) {
    const auto& wps = scn.trajectories[i].waypoints;
    if (wps.empty()) {
      out.push_back({"entity " + std::to_string(i) + ": no waypoints"});
      continue;
    }
    for (std::size_t w = 0; w < wps.size(); ++w) {
      if (static_cast<int>(wps[w].second.size()) != scn.dim)
        out.push_back({"entity " + std::to_string(i) + ": waypoint " +
                       std::to_string(w) + " has wrong dimension"});
      if (w > 0) {
        const double dt = wps[w].first - wps[w - 1].first;
        if (dt <= 0.0) {
          out.push_back({"entity " + std::to_string(i) +
                         ": waypoint times not strictly increasing at " +
                         std::to_string(w)});
          continue;
        }
        const double dp = dist(wps[w].second, wps[w - 1].second);
        if (dp / dt > 1.0 + kSpeedTol)
          out.push_back({"entity " + std::to_string(i) + ": segment " +
                         std::to_string(w - 1) + " speed " +
                         std::to_string(dp / dt) + " exceeds bound 1"});
      }
    }
  }
  if (!out.empty()) return out;

  if (scn.enforce_disjoint && scn.size() > 1) {
    const double step = std::max(grid_step_fraction * scn.horizon, 1e-12);
    for (double t = 0.0; t <= scn.horizon + kSpeedTol; t += step) {
      const Configuration cfg = configuration_at(scn, std::min(t, scn.horizon));
      for (std::size_t i = 0; i < cfg.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.size(); ++j)
          if (dist(cfg.centers[i], cfg.centers[j]) - 2.0 * scn.rho < -kSpeedTol)
            out.push_back({"entities " + std::to_string(i) + " and " +
                           std::to_string(j) + " overlap at t = " +
                           std::to_string(t)});
      if (!out.empty()) return out;  // one grid point is enough to report
    }
  }
  return out;
}

}  // namespace uq
