#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "uq/motion.hpp"

namespace uq {

struct Fixture {
  Scenario scenario;
  // Analytically known properties of the construction, by name.
  std::map<std::string, double> expectations;
  // Entity index structure where the construction has one.
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> specials;
  std::vector<std::string> annotations;
};

// n/2 stationary well-separated pairs on a line; pair i has separation
// 4i - 1 and pairs are 100n apart. Expectations: the degree-1 deadline
// is reachable at unit granularity, and keeping degree 1 continuously
// over a window of length n demands sum_i n/(4i-1) queries.
Fixture gen_pairs_fixture(std::size_t n);

// Two coincident point clusters of (x + beta x + 1)/2 entities at
// distance 4(1 + beta x). An odd total splits unevenly (recorded in the
// annotations).
Fixture gen_cluster_fixture(int x, double beta);

// Two groups of (x+1)/2 + beta x entities starting at distance
// x + 4 beta x + 4 on either side of the origin, converging at unit
// speed; beta x + 1 specials per side turn around at t = 2 beta x + 3,
// the rest stop at the origin at the target time. The optional
// extension has the non-specials retreat after the target time.
Fixture gen_reversal_fixture(int x, double beta,
                             bool periodic_extension = false);

// Deterministic random scenario: jittered grid placement with pairwise
// separations bounded away from zero, optionally wandering within
// per-entity cells at speed below one.
Fixture gen_random(std::uint64_t seed, std::size_t n, int dim, double density,
                   bool mobile = false, double horizon = 0.0);

}  // namespace uq
