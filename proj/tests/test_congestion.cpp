#include <doctest.h>

#include <cmath>
#include <random>

#include "uq/congestion.hpp"

using namespace uq;

namespace {

std::vector<Region> triangle_disks(double side) {
  const double h = side * std::sqrt(3.0) / 2.0;
  return {Region{{0.0, 0.0}, 1.0, false},
          Region{{side, 0.0}, 1.0, false},
          Region{{side / 2.0, h}, 1.0, false}};
}

}  // namespace

TEST_CASE("unit disks on an equilateral triangle, around the ply thresholds") {
  // Circumradius side/sqrt(3) against disk radius 1: common point iff
  // side <= sqrt(3); pairwise overlap iff side <= 2.
  SUBCASE("side 1.7: all three disks share a point") {
    const auto r = triangle_disks(1.7);
    CHECK(ply(r, 2).ply == 3);
    CHECK(ply(r, 2).exact);
    CHECK(degree(build_pe_graph(r)).delta == 3);
  }
  SUBCASE("side 1.9: pairwise overlaps but no triple point") {
    const auto r = triangle_disks(1.9);
    CHECK(ply(r, 2).ply == 2);
    CHECK(degree(build_pe_graph(r)).delta == 3);
    CHECK(thickness(build_pe_graph(r)).chi == 3);
  }
  SUBCASE("side 2.1: pairwise disjoint") {
    const auto r = triangle_disks(2.1);
    CHECK(ply(r, 2).ply == 1);
    CHECK(degree(build_pe_graph(r)).delta == 1);
    CHECK(thickness(build_pe_graph(r)).chi == 1);
  }
}

TEST_CASE("interval regions on a line") {
  const std::vector<Region> r = {Region{{1.0}, 1.0, false},
                                 Region{{2.0}, 1.0, false},
                                 Region{{3.5}, 1.0, false}};
  const PEGraph g = build_pe_graph(r);
  CHECK(g.edge(0, 1));
  CHECK(g.edge(1, 2));
  CHECK_FALSE(g.edge(0, 2));
  CHECK(degree(g).delta == 3);  // middle interval, counting itself
  CHECK(degree(g).per_entity[0] == 2);
  CHECK(ply(r, 1).ply == 2);
  CHECK(ply(r, 1).exact);
  CHECK(thickness(g).chi == 2);
}

TEST_CASE("closed-ball tangency counts as intersection") {
  const Region a{{0.0}, 1.0, false};
  const Region b{{2.0}, 1.0, false};
  const Region c{{2.0 + 1e-6}, 1.0, false};
  CHECK(regions_intersect(a, b));
  CHECK_FALSE(regions_intersect(a, c));
}

TEST_CASE("unbounded regions meet everything and join every depth count") {
  std::vector<Region> r = {Region{{0.0}, 0.5, false},
                           Region{{100.0}, 0.5, false},
                           Region::infinite(1)};
  const PEGraph g = build_pe_graph(r);
  CHECK(g.edge(0, 2));
  CHECK(g.edge(1, 2));
  CHECK_FALSE(g.edge(0, 1));
  CHECK(degree(g).delta == 3);
  CHECK(ply(r, 1).ply == 2);
  CHECK(Region::infinite(1).contains({1e18}));
}

TEST_CASE("thickness on a five-cycle needs three colours") {
  PEGraph g;
  g.n = 5;
  g.adj.assign(5, std::vector<bool>(5, false));
  for (std::size_t i = 0; i < 5; ++i) {
    const std::size_t j = (i + 1) % 5;
    g.adj[i][j] = g.adj[j][i] = true;
  }
  const ThicknessResult t = thickness(g);
  CHECK(t.chi == 3);
  CHECK(t.exact);
  CHECK(t.clique_lb == 2);
}

TEST_CASE("sampled ply in three dimensions is flagged and bounded") {
  std::vector<Region> r;
  for (int i = 0; i < 4; ++i)
    r.push_back(Region{{0.1 * i, 0.0, 0.0}, 1.0, false});
  const PlyResult p = ply(r, 3, 7);
  CHECK_FALSE(p.exact);
  CHECK(p.ply >= 1);
  CHECK(p.ply <= 4);
}

TEST_CASE("ply is at most thickness is at most degree on random disk sets") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> pos(0.0, 10.0);
  std::uniform_real_distribution<double> rad(0.3, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Region> r;
    const int n = 3 + trial % 10;
    for (int i = 0; i < n; ++i)
      r.push_back(Region{{pos(rng), pos(rng)}, rad(rng), false});
    const PEGraph g = build_pe_graph(r);
    const int delta = degree(g).delta;
    const ThicknessResult chi = thickness(g);
    const PlyResult p = ply(r, 2);
    REQUIRE(p.exact);
    REQUIRE(chi.exact);
    CHECK(p.ply <= chi.chi);
    CHECK(chi.chi <= delta);
    CHECK(chi.clique_lb <= chi.chi);
    CHECK(p.ply >= 1);
  }
}

TEST_CASE("depth_within restricts counting to the window") {
  const Region window{{0.0}, 1.0, false};
  const std::vector<Region> others = {Region{{0.5}, 0.2, false},
                                      Region{{0.6}, 0.2, false},
                                      Region{{50.0}, 10.0, false}};
  const PlyResult d = depth_within(window, others, 1);
  CHECK(d.exact);
  CHECK(d.ply == 2);
}
