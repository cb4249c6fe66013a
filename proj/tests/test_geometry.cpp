#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "uq/fixtures.hpp"
#include "uq/geometry.hpp"

using namespace uq;

TEST_CASE("packing constants in one dimension") {
  CHECK(dim_constants(1, 4).c == doctest::Approx(2.0));
  CHECK(dim_constants(1, 5).c == doctest::Approx(2.0));
  CHECK(dim_constants(1, 6).c == doctest::Approx(4.0));
  CHECK(dim_constants(1, 7).c == doctest::Approx(4.0));
  CHECK(dim_constants(1, 4).lambda == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("packing constants in two dimensions") {
  // Ring-packing lower bound where the volume surrogate is nonpositive;
  // the values are conservative and frozen against drift.
  const double c8 = dim_constants(2, 8).c;
  const double c9 = dim_constants(2, 9).c;
  CHECK(c8 == doctest::Approx(0.281776).epsilon(1e-4));
  CHECK(c9 == doctest::Approx(0.522408).epsilon(1e-4));
  CHECK(c8 > 0.0);
  CHECK(c9 > c8);
  // Volume surrogate takes over once positive.
  CHECK(dim_constants(2, 16).c == doctest::Approx(1.0));
  for (int x : {8, 9, 10, 11, 12}) {
    const DimConstants dc = dim_constants(2, x);
    CHECK(dc.lambda == doctest::Approx(dc.c / (1.0 + dc.c)));
    CHECK(dc.lambda > 0.0);
    CHECK(dc.lambda < 1.0);
  }
}

TEST_CASE("x_hat per dimension and the invalid regime") {
  CHECK(x_hat_for_dim(1) == 3);
  CHECK(x_hat_for_dim(2) == 7);
  CHECK(x_hat_for_dim(3) == 27);
  CHECK_THROWS_AS(dim_constants(1, 3), std::domain_error);
  CHECK_THROWS_AS(dim_constants(2, 7), std::domain_error);
  CHECK_NOTHROW(dim_constants(1, 4));
  CHECK_NOTHROW(dim_constants(2, 8));
}

TEST_CASE("cover bound constants") {
  CHECK(dim_constants(1, 4).cover_bound(1.0) == 2);
  CHECK(dim_constants(2, 8).cover_bound(1.0) == 12);
  CHECK(dim_constants(2, 8).cover_bound(3.0) == 37);
  CHECK_THROWS_AS(dim_constants(1, 4).cover_bound(0.5), std::invalid_argument);
}

TEST_CASE("x-separation on a hand-built line configuration") {
  Configuration cfg;
  cfg.dim = 1;
  cfg.rho = 0.5;
  cfg.centers = {{0.0}, {2.0}, {5.0}, {9.0}};
  // Separations from entity 0: 1, 4, 8.
  CHECK(x_separation(cfg, 0, 1) == doctest::Approx(1.0));
  CHECK(x_separation(cfg, 0, 2) == doctest::Approx(4.0));
  CHECK(x_separation(cfg, 0, 3) == doctest::Approx(8.0));
  CHECK(x_radius(cfg, 0, 2) == doctest::Approx(4.5));
  CHECK_THROWS_AS(x_separation(cfg, 0, 4), std::out_of_range);
  CHECK_THROWS_AS(x_separation(cfg, 0, 0), std::out_of_range);
}

TEST_CASE("gamma neighbours include the entity itself") {
  Configuration cfg;
  cfg.dim = 1;
  cfg.rho = 0.0;
  cfg.centers = {{0.0}, {1.0}, {10.0}};
  const auto g = gamma_x_neighbors(cfg, 0, 1);
  CHECK(g.size() <= 1 + 1);
  CHECK(std::find(g.begin(), g.end(), 0u) != g.end());
}

TEST_CASE("radius and separation inequalities on random configurations") {
  for (int s = 0; s < 40; ++s) {
    const Fixture fx = gen_random(400 + s, 14, 2, 1.0);
    const Configuration cfg = configuration_at(fx.scenario, 0.0);
    const int x = 8 + s % 5;
    const DimConstants dc = dim_constants(2, x);
    for (std::size_t i = 0; i < cfg.size(); ++i) {
      const double si = x_separation(cfg, i, x);
      const double ri = x_radius(cfg, i, x);
      CHECK(cfg.rho <= (1.0 - dc.lambda) / dc.lambda * si + kGeomTol);
      CHECK(ri <= si / dc.lambda + kGeomTol);
      for (std::size_t j : gamma_x_neighbors(cfg, i, x)) {
        if (j == i) continue;
        CHECK(x_radius(cfg, j, x) <= cfg.rho + 2.0 * ri + kGeomTol);
      }
      for (std::size_t j = 0; j < cfg.size(); ++j) {
        if (j == i) continue;
        CHECK(x_separation(cfg, j, x) <=
              dist(cfg.centers[i], cfg.centers[j]) + si + kGeomTol);
      }
    }
  }
}

TEST_CASE("ball cover bound on random configurations") {
  std::mt19937_64 rng(11);
  for (int s = 0; s < 30; ++s) {
    const Fixture fx = gen_random(500 + s, 16, 2, 1.0);
    const Configuration cfg = configuration_at(fx.scenario, 0.0);
    const int x = 8 + s % 6;
    const DimConstants dc = dim_constants(2, x);
    std::uniform_int_distribution<std::size_t> pick(0, cfg.size() - 1);
    std::uniform_real_distribution<double> scale(0.05, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t i = pick(rng);
      const double alpha = trial % 2 ? 3.0 : 1.0;
      const double r = scale(rng) * x_radius(cfg, i, x);
      CHECK(verify_ball_cover(cfg, cfg.centers[i], r, x, alpha) <=
            dc.cover_bound(alpha) * x);
    }
  }
}
