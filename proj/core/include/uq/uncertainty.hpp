#pragma once

#include <vector>

#include "uq/congestion.hpp"
#include "uq/motion.hpp"

namespace uq {

// Everything a (non-clairvoyant) scheme is allowed to see: per-entity
// last-query times and the positions revealed by those queries.
struct PerceptionState {
  int dim = 1;
  double rho = 0.0;
  double clock = 0.0;

  struct Entry {
    bool queried = false;
    double last_query = 0.0;
    Point center;  // position at last_query; undefined before first query
  };
  std::vector<Entry> entries;

  static PerceptionState initial(const Scenario& scn);
  std::size_t size() const { return entries.size(); }

  // Uncertainty region at the current clock.
  Region region(std::size_t i) const;
};

// Reveal the exact position of entity i at time t and advance the clock.
// Throws on time regression.
void apply_query(PerceptionState& st, std::size_t i, double t,
                 const Scenario& scn);

// Uncertainty region entity i would have at time tau with no further
// queries.
Region projected_region(const PerceptionState& st, std::size_t i, double tau);

std::vector<Region> projected_regions(const PerceptionState& st, double tau);

// Degree-safe: the projected region of i intersects those of at most
// x - 1 other entities.
bool is_degree_safe(const PerceptionState& st, std::size_t i, double tau,
                    int x);

// Ply-safe: no point lies in the projected region of i and in those of
// x or more other entities simultaneously.
bool is_ply_safe(const PerceptionState& st, std::size_t i, double tau, int x);

// x-th smallest pairwise separation computed from perceived positions.
// Requires every entity to have been queried at least once.
double perceived_x_separation(const PerceptionState& st, std::size_t i, int x);

double perceived_x_radius(const PerceptionState& st, std::size_t i, int x);

}  // namespace uq
