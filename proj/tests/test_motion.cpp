#include <doctest.h>

#include "uq/fixtures.hpp"
#include "uq/motion.hpp"

using namespace uq;

TEST_CASE("trajectory interpolation clamps outside the waypoint span") {
  Trajectory tr;
  tr.waypoints = {{1.0, {0.0, 0.0}}, {3.0, {2.0, 0.0}}};
  CHECK(tr.at(0.0)[0] == doctest::Approx(0.0));
  CHECK(tr.at(1.0)[0] == doctest::Approx(0.0));
  CHECK(tr.at(2.0)[0] == doctest::Approx(1.0));
  CHECK(tr.at(3.0)[0] == doctest::Approx(2.0));
  CHECK(tr.at(10.0)[0] == doctest::Approx(2.0));
}

TEST_CASE("configuration_at snapshots every entity") {
  Scenario scn;
  scn.dim = 1;
  scn.rho = 0.25;
  scn.horizon = 4.0;
  scn.trajectories = {Trajectory{{{0.0, {0.0}}, {4.0, {4.0}}}},
                      Trajectory{{{0.0, {10.0}}}}};
  const Configuration cfg = configuration_at(scn, 2.0);
  CHECK(cfg.size() == 2);
  CHECK(cfg.rho == doctest::Approx(0.25));
  CHECK(cfg.centers[0][0] == doctest::Approx(2.0));
  CHECK(cfg.centers[1][0] == doctest::Approx(10.0));
}

TEST_CASE("validate flags speed violations and waypoint disorder") {
  Scenario scn;
  scn.dim = 1;
  scn.horizon = 2.0;
  scn.enforce_disjoint = false;
  scn.trajectories = {Trajectory{{{0.0, {0.0}}, {1.0, {3.0}}}}};
  CHECK_FALSE(validate(scn).empty());

  scn.trajectories = {Trajectory{{{1.0, {0.0}}, {0.5, {0.1}}}}};
  CHECK_FALSE(validate(scn).empty());

  scn.trajectories = {Trajectory{{{0.0, {0.0}}, {1.0, {0.9}}}}};
  CHECK(validate(scn).empty());
}

TEST_CASE("validate flags coincident entities when disjointness is enforced") {
  Scenario scn;
  scn.dim = 2;
  scn.rho = 0.25;
  scn.horizon = 1.0;
  scn.enforce_disjoint = true;
  scn.trajectories = {Trajectory{{{0.0, {0.0, 0.0}}}},
                      Trajectory{{{0.0, {0.0, 0.0}}}}};
  CHECK_FALSE(validate(scn).empty());
  scn.enforce_disjoint = false;
  CHECK(validate(scn).empty());
}

TEST_CASE("random fixtures respect the speed bound and stay disjoint") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Fixture fx = gen_random(seed, 20, 2, 1.0, true);
    CHECK(validate(fx.scenario).empty());
    const double lb = fx.expectations.at("min_separation_lb");
    CHECK(lb > 0.0);
    for (double t : {0.0, 5.0, 10.0}) {
      const Configuration cfg = configuration_at(fx.scenario, t);
      for (std::size_t i = 0; i < cfg.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.size(); ++j)
          CHECK(separation(cfg, i, j) >= -kGeomTol);
    }
  }
}
