#pragma once

#include <cstddef>
#include <vector>

namespace uq {

using Point = std::vector<double>;

// Absolute tolerance for geometric comparisons (touching balls intersect).
inline constexpr double kGeomTol = 1e-9;

double dist(const Point& a, const Point& b);

// A snapshot of entity center positions. Entities are closed balls of
// radius `rho`; the separation between two entities is the distance
// between their centers minus 2*rho.
struct Configuration {
  int dim = 1;
  double rho = 0.0;
  bool enforce_disjoint = true;
  std::vector<Point> centers;

  std::size_t size() const { return centers.size(); }
  // Throws std::invalid_argument on dimension mismatch or, when
  // enforce_disjoint is set, on a negative pairwise separation.
  void check() const;
};

// Largest congestion bound x for which two entities can coincide in some
// legal (disjoint) configuration; schemes require x strictly above this.
int x_hat_for_dim(int dim);

// Packing constants for dimension d and neighbourhood size x.
// For d >= 2 the value of c is a conservative lower bound on the true
// packing constant (a smaller c weakens lambda, which only makes schemes
// query more often).
struct DimConstants {
  int dim = 1;
  int x = 0;
  double c = 0.0;       // separation packing constant (surrogate for d >= 2)
  double lambda = 0.0;  // c / (1 + c), in (0, 1)
  int x_hat = 0;

  // Max number of x-balls, at least as large as a probe ball, whose
  // alpha-inflations the probe can intersect, divided by x. Defined for
  // d in {1, 2}; throws for d >= 3.
  int cover_bound(double alpha) const;
};

// Throws std::domain_error when x <= x_hat(dim) (the invalid regime).
DimConstants dim_constants(int dim, int x);

double separation(const Configuration& cfg, std::size_t i, std::size_t j);

// Separation from entity i to its x-th closest neighbour (x >= 1).
// Ties between equidistant neighbours are broken by entity index.
double x_separation(const Configuration& cfg, std::size_t i, int x);

// x-radius: rho + x-separation. The x-ball of entity i is the closed
// ball with this radius centered at the entity.
double x_radius(const Configuration& cfg, std::size_t i, int x);

// Entities (including i itself) whose balls intersect the open interior
// of the x-ball of entity i. Coincident zero-radius entities count as
// intersecting.
std::vector<std::size_t> gamma_x_neighbors(const Configuration& cfg,
                                           std::size_t i, int x);

// Number of entities whose alpha-inflated x-ball intersects the probe
// ball and has radius at least the probe radius. Bounded above by
// cover_bound(alpha) * x.
int verify_ball_cover(const Configuration& cfg, const Point& probe_center,
                      double probe_radius, int x, double alpha);

}  // namespace uq
