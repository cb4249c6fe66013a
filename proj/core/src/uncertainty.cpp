#include "uq/uncertainty.hpp"

#include <algorithm>
#include <stdexcept>

namespace uq {

PerceptionState PerceptionState::initial(const Scenario& scn) {
  PerceptionState st;
  st.dim = scn.dim;
  st.rho = scn.rho;
  st.clock = 0.0;
  st.entries.resize(scn.size());
  return st;
}

Region PerceptionState::region(std::size_t i) const {
  const Entry& e = entries[i];
  if (!e.queried) return Region::infinite(dim);
  return Region{e.center, rho + (clock - e.last_query), false};
}

void apply_query(PerceptionState& st, std::size_t i, double t,
                 const Scenario& scn) {
  if (i >= st.size()) throw std::out_of_range("entity index out of range");
  if (t < st.clock - kGeomTol)
    throw std::invalid_argument("query time precedes perception clock");
  st.clock = std::max(st.clock, t);
  st.entries[i].queried = true;
  st.entries[i].last_query = t;
  st.entries[i].center = scn.trajectories[i].at(t);
}

Region projected_region(const PerceptionState& st, std::size_t i, double tau) {
  if (tau < st.clock - kGeomTol)
    throw std::invalid_argument("projection target precedes clock");
  const auto& e = st.entries[i];
  if (!e.queried) return Region::infinite(st.dim);
  return Region{e.center, st.rho + (tau - e.last_query), false};
}

std::vector<Region> projected_regions(const PerceptionState& st, double tau) {
  std::vector<Region> out;
  out.reserve(st.size());
  for (std::size_t i = 0; i < st.size(); ++i)
    out.push_back(projected_region(st, i, tau));
  return out;
}

bool is_degree_safe(const PerceptionState& st, std::size_t i, double tau,
                    int x) {
  const Region mine = projected_region(st, i, tau);
  int hits = 0;
  for (std::size_t j = 0; j < st.size(); ++j) {
    if (j == i) continue;
    if (regions_intersect(mine, projected_region(st, j, tau))) ++hits;
    if (hits > x - 1) return false;
  }
  return true;
}

bool is_ply_safe(const PerceptionState& st, std::size_t i, double tau, int x) {
  const Region mine = projected_region(st, i, tau);
  std::vector<Region> others;
  others.reserve(st.size() - 1);
  for (std::size_t j = 0; j < st.size(); ++j)
    if (j != i) others.push_back(projected_region(st, j, tau));
  return depth_within(mine, others, st.dim).ply <= x - 1;
}

double perceived_x_separation(const PerceptionState& st, std::size_t i,
                              int x) {
  const std::size_t n = st.size();
  if (i >= n) throw std::out_of_range("entity index out of range");
  if (x < 1 || static_cast<std::size_t>(x) > n - 1)
    throw std::out_of_range("x must be in [1, n-1]");
  for (const auto& e : st.entries)
    if (!e.queried)
      throw std::invalid_argument(
          "perceived separation undefined with unqueried entities");
  std::vector<double> seps;
  seps.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j)
    if (j != i)
      seps.push_back(dist(st.entries[i].center, st.entries[j].center) -
                     2.0 * st.rho);
  std::nth_element(seps.begin(), seps.begin() + (x - 1), seps.end());
  return seps[x - 1];
}

double perceived_x_radius(const PerceptionState& st, std::size_t i, int x) {
  return st.rho + perceived_x_separation(st, i, x);
}

}  // namespace uq
