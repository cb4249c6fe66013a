#pragma once

#include <cstdint>
#include <vector>

#include "uq/geometry.hpp"

namespace uq {

// An uncertainty region: closed ball, or the whole space when unbounded
// (entity never queried). Unboundedness is an explicit flag, never a
// sentinel value inside comparisons.
struct Region {
  Point center;
  double radius = 0.0;
  bool unbounded = false;

  bool contains(const Point& p) const;
  static Region infinite(int dim) {
    return Region{Point(static_cast<std::size_t>(dim), 0.0), 0.0, true};
  }
};

bool regions_intersect(const Region& a, const Region& b);

struct PEGraph {
  std::size_t n = 0;
  std::vector<std::vector<bool>> adj;

  bool edge(std::size_t i, std::size_t j) const { return adj[i][j]; }
};

// Potential-encroachment graph: edge iff the closed regions intersect
// (tolerance kGeomTol); unbounded regions are adjacent to everything.
PEGraph build_pe_graph(const std::vector<Region>& regions);

struct DegreeResult {
  int delta = 0;                  // max over entities
  std::vector<int> per_entity;    // graph degree + 1 (counts the entity itself)
};
DegreeResult degree(const PEGraph& g);

struct PlyResult {
  int ply = 0;
  bool exact = true;  // false means sampled lower bound (d >= 3)
};

// Maximum number of regions sharing a point. Exact for dim 1 (endpoint
// sweep) and dim 2 (centers plus pairwise circle intersections); a
// sampled lower bound for dim >= 3.
PlyResult ply(const std::vector<Region>& regions, int dim,
              std::uint64_t seed = 1, int mc_samples = 10000);

// Max depth over points of `others` restricted to the region `window`,
// i.e. the largest number of other regions sharing a point with the
// window. Exact for dim <= 2; sampled otherwise.
PlyResult depth_within(const Region& window, const std::vector<Region>& others,
                       int dim, std::uint64_t seed = 1, int mc_samples = 10000);

struct ThicknessResult {
  int chi = 0;
  bool exact = true;
  int clique_lb = 0;  // reported alongside, never asserted against chi
};

// Chromatic number of the PE graph: exact branch-and-bound up to
// exact_limit vertices, smallest-last greedy beyond that.
ThicknessResult thickness(const PEGraph& g, std::size_t exact_limit = 20);

}  // namespace uq
