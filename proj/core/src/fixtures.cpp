#include "uq/fixtures.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace uq {

namespace {

long long integral_beta_x(int x, double beta) {
  const double bx = beta * x;
  const long long r = std::llround(bx);
  if (std::fabs(bx - r) > 1e-9)
    throw std::invalid_argument("beta*x must be an integer");
  return r;
}

}  // namespace

Fixture gen_pairs_fixture(std::size_t n) {
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("n must be even");
  Fixture out;
  Scenario& scn = out.scenario;
  scn.dim = 1;
  scn.rho = 0.0;
  scn.enforce_disjoint = false;
  scn.horizon = 2.0 * static_cast<double>(n);
  scn.target_time = static_cast<double>(n);

  double demand = 0.0;
  for (std::size_t i = 1; i <= n / 2; ++i) {
    const double base = 100.0 * static_cast<double>(n) * static_cast<double>(i);
    const double sep = 4.0 * static_cast<double>(i) - 1.0;
    scn.trajectories.push_back(Trajectory{{{0.0, {base}}}});
    scn.trajectories.push_back(Trajectory{{{0.0, {base + sep}}}});
    out.groups.push_back({2 * (i - 1), 2 * (i - 1) + 1});
    demand += static_cast<double>(n) / sep;
  }
  out.expectations["deadline_granularity"] = 1.0;
  out.expectations["window_length"] = static_cast<double>(n);
  out.expectations["continuous_degree1_demand"] = demand;
  return out;
}

Fixture gen_cluster_fixture(int x, double beta) {
  const long long bx = integral_beta_x(x, beta);
  const long long total = x + bx + 1;
  if (total < 2) throw std::invalid_argument("too few entities");
  const long long size_a = (total + 1) / 2;
  const long long size_b = total / 2;
  const double gap = 4.0 * (1.0 + static_cast<double>(bx));

  Fixture out;
  if (size_a != size_b)
    out.annotations.push_back("odd entity count: clusters split " +
                              std::to_string(size_a) + "/" +
                              std::to_string(size_b));
  Scenario& scn = out.scenario;
  scn.dim = 1;
  scn.rho = 0.0;
  scn.enforce_disjoint = false;
  const double period = 2.0 * (1.0 + static_cast<double>(bx));
  scn.horizon = 20.0 * period;

  out.groups.resize(2);
  for (long long i = 0; i < size_a; ++i) {
    out.groups[0].push_back(scn.trajectories.size());
    scn.trajectories.push_back(Trajectory{{{0.0, {0.0}}}});
  }
  for (long long i = 0; i < size_b; ++i) {
    out.groups[1].push_back(scn.trajectories.size());
    scn.trajectories.push_back(Trajectory{{{0.0, {gap}}}});
  }
  out.expectations["cluster_gap"] = gap;
  out.expectations["maintain_period"] = period;
  out.expectations["fresh_per_cluster"] = static_cast<double>(bx + 1);
  out.expectations["ply_bound"] = static_cast<double>(x);
  out.expectations["degree_window"] = gap;
  out.expectations["degree_forced_queries"] = static_cast<double>(total);
  return out;
}

Fixture gen_reversal_fixture(int x, double beta, bool periodic_extension) {
  if (x < 1 || x % 2 == 0) throw std::invalid_argument("x must be odd");
  const long long bx = integral_beta_x(x, beta);
  const long long per_side = (x + 1) / 2 + bx;
  const double big_x = static_cast<double>(x + 4 * bx + 4);
  const double t_rev = static_cast<double>(2 * bx + 3);
  const double tau = big_x;

  Fixture out;
  Scenario& scn = out.scenario;
  scn.dim = 1;
  scn.rho = 0.0;
  scn.enforce_disjoint = false;
  scn.horizon = periodic_extension ? 3.0 * tau : 2.0 * tau;
  scn.target_time = tau;

  for (int side = 0; side < 2; ++side) {
    const double sgn = side == 0 ? -1.0 : 1.0;
    for (long long i = 0; i < per_side; ++i) {
      const std::size_t id = scn.trajectories.size();
      const bool special = i <= bx;
      Trajectory traj;
      traj.waypoints.push_back({0.0, {sgn * big_x}});
      if (special) {
        out.specials.push_back(id);
        traj.waypoints.push_back({t_rev, {sgn * (big_x - t_rev)}});
        const double end_pos = big_x - 2.0 * t_rev + scn.horizon;
        traj.waypoints.push_back({scn.horizon, {sgn * end_pos}});
      } else {
        traj.waypoints.push_back({tau, {0.0}});
        if (periodic_extension)
          traj.waypoints.push_back({2.0 * tau, {sgn * big_x}});
      }
      scn.trajectories.push_back(traj);
    }
  }
  out.groups.resize(2);
  for (std::size_t i = 0; i < scn.trajectories.size(); ++i)
    out.groups[i < static_cast<std::size_t>(per_side) ? 0 : 1].push_back(i);

  out.expectations["start_distance"] = big_x;
  out.expectations["reversal_time"] = t_rev;
  out.expectations["target_time"] = tau;
  out.expectations["special_count"] = static_cast<double>(2 * (bx + 1));
  out.expectations["phase1_end"] = static_cast<double>(x + 2 * bx + 1);
  out.expectations["competitive_ratio"] =
      static_cast<double>(x + 2 * bx + 1) / static_cast<double>(2 * bx + 3);
  return out;
}

Fixture gen_random(std::uint64_t seed, std::size_t n, int dim, double density,
                   bool mobile, double horizon) {
  if (n == 0 || dim < 1 || density <= 0.0)
    throw std::invalid_argument("need entities, dim >= 1, density > 0");
  const double s0 = std::pow(density, -1.0 / dim);
  const double rho = 0.2 * s0;
  const double cell = 2.0 * rho + s0;
  const double jitter = 0.1 * cell;
  const double wander = mobile ? 0.15 * cell : 0.0;
  if (horizon <= 0.0) horizon = 20.0 * s0;

  std::size_t side = 1;
  while (std::pow(static_cast<double>(side), dim) < static_cast<double>(n))
    ++side;

  for (int attempt = 0; attempt < 5; ++attempt) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * attempt);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto ball_offset = [&](double radius) {
      Point p(dim);
      for (;;) {
        double norm2 = 0.0;
        for (int k = 0; k < dim; ++k) {
          p[k] = unit(rng);
          norm2 += p[k] * p[k];
        }
        if (norm2 <= 1.0) break;
      }
      for (int k = 0; k < dim; ++k) p[k] *= radius;
      return p;
    };

    Fixture out;
    Scenario& scn = out.scenario;
    scn.dim = dim;
    scn.rho = rho;
    scn.enforce_disjoint = true;
    scn.horizon = horizon;

    for (std::size_t e = 0; e < n; ++e) {
      Point home(dim);
      std::size_t rem = e;
      for (int k = 0; k < dim; ++k) {
        home[k] = (static_cast<double>(rem % side) + 0.5) * cell;
        rem /= side;
      }
      const Point j = ball_offset(jitter);
      for (int k = 0; k < dim; ++k) home[k] += j[k];

      Trajectory traj;
      if (!mobile) {
        traj.waypoints.push_back({0.0, home});
      } else {
        // Position holds constant after the last waypoint, so the final
        // partial interval needs no special casing.
        const double step = 2.5 * wander;
        for (double t = 0.0; t <= horizon; t += step) {
          Point p = home;
          const Point off = ball_offset(wander);
          for (int k = 0; k < dim; ++k) p[k] += off[k];
          traj.waypoints.push_back({t, p});
        }
      }
      scn.trajectories.push_back(std::move(traj));
    }

    if (!validate(scn).empty()) continue;
    out.expectations["rho"] = rho;
    out.expectations["min_separation_lb"] =
        cell - 2.0 * jitter - 2.0 * wander - 2.0 * rho;
    out.annotations.push_back("seed " + std::to_string(seed) + ", attempt " +
                              std::to_string(attempt));
    return out;
  }
  throw std::runtime_error("random scenario generation failed validation");
}

}  // namespace uq
