#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "uq/demand.hpp"
#include "uq/fixtures.hpp"

using namespace uq;

TEST_CASE("stationary demand on the separated-pairs layout") {
  const Fixture fx = gen_pairs_fixture(4);
  const Configuration cfg = configuration_at(fx.scenario, 0.0);
  // Separations with x = 1: 3, 3, 7, 7.
  CHECK(phi_stationary(cfg, 1) == doctest::Approx(2.0 / 3.0 + 2.0 / 7.0));
}

TEST_CASE("stationary demand diverges on coincident entities") {
  Configuration cfg;
  cfg.dim = 1;
  cfg.rho = 0.0;
  cfg.centers = {{0.0}, {0.0}};
  CHECK_THROWS_AS(phi_stationary(cfg, 1), std::domain_error);
}

TEST_CASE("demand integral of a separating pair has a closed form") {
  // Two entities back away from each other at unit speed from distance 2;
  // the demand is 2/(2+2t) and its integral over [0,3] is 2 ln 2.
  Scenario scn;
  scn.dim = 1;
  scn.rho = 0.0;
  scn.enforce_disjoint = false;
  scn.horizon = 3.0;
  scn.trajectories = {Trajectory{{{0.0, {-1.0}}, {3.0, {-4.0}}}},
                      Trajectory{{{0.0, {1.0}}, {3.0, {4.0}}}}};
  const double got = phi_integral(scn, 1, 0.0, 3.0);
  const double want = 2.0 * std::log(2.0);
  CHECK(std::fabs(got - want) <= 1e-6 * want);
  // Consistency with the stationary evaluation on a constant scenario.
  Scenario flat = scn;
  flat.trajectories = {Trajectory{{{0.0, {-1.0}}}}, Trajectory{{{0.0, {1.0}}}}};
  const double phi0 = phi_stationary(configuration_at(flat, 0.0), 1);
  CHECK(phi_integral(flat, 1, 0.0, 3.0) == doctest::Approx(3.0 * phi0));
}

TEST_CASE("fixed-target spacing for two entities splits the gap 1:2") {
  Configuration cfg;
  cfg.dim = 1;
  cfg.rho = 0.0;
  cfg.centers = {{0.0}, {3.0}};
  const GammaResult g = gamma_fixed_target(cfg, 1, Measure::degree);
  CHECK(g.exact);
  CHECK(g.gamma == doctest::Approx(1.0).epsilon(1e-6));
  const GammaResult gp = gamma_fixed_target(cfg, 1, Measure::ply);
  CHECK(gp.gamma == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fixed-target spacing is unbounded for a single entity") {
  Configuration cfg;
  cfg.dim = 1;
  cfg.rho = 1.0;
  cfg.centers = {{0.0}};
  CHECK(std::isinf(gamma_fixed_target(cfg, 1, Measure::degree).gamma));
}

TEST_CASE("greedy spacing never exceeds the exact one") {
  const Fixture fx = gen_random(9, 6, 2, 1.0);
  const Configuration cfg = configuration_at(fx.scenario, 0.0);
  const GammaResult exact = gamma_fixed_target(cfg, 3, Measure::degree, 8);
  const GammaResult greedy = gamma_fixed_target(cfg, 3, Measure::degree, 0);
  CHECK(exact.exact);
  CHECK_FALSE(greedy.exact);
  CHECK(greedy.gamma <= exact.gamma + 1e-9);
  CHECK(greedy.gamma > 0.0);
}

TEST_CASE("uniformity lies in (0, 2^(1/d)]") {
  const Fixture fx = gen_pairs_fixture(8);
  const double mu = mu_uniformity(fx.scenario, 1, 0.0, 0.0);
  CHECK(mu > 0.0);
  CHECK(mu <= std::pow(2.0, 1.0) + 1e-9);

  const Fixture grid = gen_random(3, 16, 2, 1.0);
  const double mu2 = mu_uniformity(grid.scenario, 4, 0.0, 0.0);
  CHECK(mu2 > 0.0);
  CHECK(mu2 <= std::pow(2.0, 0.5) + 1e-9);
}
