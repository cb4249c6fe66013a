#include "uq/congestion.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace uq {

bool Region::contains(const Point& p) const {
  if (unbounded) return true;
  return dist(center, p) <= radius + kGeomTol;
}

bool regions_intersect(const Region& a, const Region& b) {
  if (a.unbounded || b.unbounded) return true;
  return dist(a.center, b.center) <= a.radius + b.radius + kGeomTol;
}

PEGraph build_pe_graph(const std::vector<Region>& regions) {
  PEGraph g;
  g.n = regions.size();
  g.adj.assign(g.n, std::vector<bool>(g.n, false));
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = i + 1; j < g.n; ++j)
      if (regions_intersect(regions[i], regions[j]))
        g.adj[i][j] = g.adj[j][i] = true;
  return g;
}

DegreeResult degree(const PEGraph& g) {
  DegreeResult r;
  r.per_entity.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    int d = 1;  // the entity itself counts
    for (std::size_t j = 0; j < g.n; ++j)
      if (j != i && g.adj[i][j]) ++d;
    r.per_entity[i] = d;
    r.delta = std::max(r.delta, d);
  }
  return r;
}

namespace {

int depth_at(const Point& p, const std::vector<Region>& regions) {
  int d = 0;
  for (const auto& r : regions)
    if (r.contains(p)) ++d;
  return d;
}

// Intersection points of two circles (boundaries); empty when disjoint
// or strictly nested. Tangency yields one (duplicated) point.
std::vector<Point> circle_intersections(const Region& a, const Region& b) {
  const double d = dist(a.center, b.center);
  if (d < kGeomTol) return {};
  if (d > a.radius + b.radius + kGeomTol) return {};
  if (d < std::fabs(a.radius - b.radius) - kGeomTol) return {};
  const double t = (d * d + a.radius * a.radius - b.radius * b.radius) /
                   (2.0 * d);
  const double h2 = a.radius * a.radius - t * t;
  const double h = std::sqrt(std::max(0.0, h2));
  const double ux = (b.center[0] - a.center[0]) / d;
  const double uy = (b.center[1] - a.center[1]) / d;
  const double mx = a.center[0] + t * ux;
  const double my = a.center[1] + t * uy;
  return {Point{mx - h * uy, my + h * ux}, Point{mx + h * uy, my - h * ux}};
}

std::vector<Point> candidate_points(const std::vector<Region>& finite, int dim,
                                    std::uint64_t seed, int mc_samples) {
  std::vector<Point> cands;
  for (const auto& r : finite) cands.push_back(r.center);
  if (dim == 1) {
    for (const auto& r : finite) {
      cands.push_back(Point{r.center[0] - r.radius});
      cands.push_back(Point{r.center[0] + r.radius});
    }
  } else if (dim == 2) {
    for (std::size_t i = 0; i < finite.size(); ++i)
      for (std::size_t j = i + 1; j < finite.size(); ++j)
        for (auto& p : circle_intersections(finite[i], finite[j]))
          cands.push_back(std::move(p));
  } else {
    for (std::size_t i = 0; i < finite.size(); ++i)
      for (std::size_t j = i + 1; j < finite.size(); ++j) {
        Point mid(finite[i].center.size());
        for (std::size_t k = 0; k < mid.size(); ++k)
          mid[k] = 0.5 * (finite[i].center[k] + finite[j].center[k]);
        cands.push_back(std::move(mid));
      }
    if (!finite.empty()) {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, finite.size() - 1);
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      for (int s = 0; s < mc_samples; ++s) {
        const Region& r = finite[pick(rng)];
        Point p(r.center.size());
        double norm = 0.0;
        for (auto& v : p) {
          v = gauss(rng);
          norm += v * v;
        }
        norm = std::sqrt(std::max(norm, 1e-300));
        const double scale =
            r.radius * std::pow(unif(rng), 1.0 / dim) / norm;
        for (std::size_t k = 0; k < p.size(); ++k)
          p[k] = r.center[k] + scale * p[k];
        cands.push_back(std::move(p));
      }
    }
  }
  return cands;
}

}  // namespace

PlyResult ply(const std::vector<Region>& regions, int dim, std::uint64_t seed,
              int mc_samples) {
  int inf = 0;
  std::vector<Region> finite;
  for (const auto& r : regions) {
    if (r.unbounded)
      ++inf;
    else
      finite.push_back(r);
  }
  PlyResult out;
  out.exact = dim <= 2;
  if (finite.empty()) {
    out.ply = inf;
    return out;
  }
  int best = 0;
  for (const auto& p : candidate_points(finite, dim, seed, mc_samples))
    best = std::max(best, depth_at(p, finite));
  out.ply = best + inf;
  return out;
}

PlyResult depth_within(const Region& window, const std::vector<Region>& others,
                       int dim, std::uint64_t seed, int mc_samples) {
  PlyResult out;
  out.exact = dim <= 2;
  int inf = 0;
  std::vector<Region> finite;
  for (const auto& r : others) {
    if (r.unbounded)
      ++inf;
    else
      finite.push_back(r);
  }
  if (window.unbounded) {
    // Every point is in the window; this is just the ply of the others.
    PlyResult p = ply(others, dim, seed, mc_samples);
    out.ply = p.ply;
    out.exact = p.exact;
    return out;
  }
  std::vector<Region> arrangement = finite;
  arrangement.push_back(window);  // window boundary bounds the max cell too
  int best = 0;
  for (const auto& p : candidate_points(arrangement, dim, seed, mc_samples))
    if (window.contains(p)) best = std::max(best, depth_at(p, finite));
  out.ply = best + inf;
  return out;
}

namespace {

// Smallest-last vertex order, then greedy colouring.
std::pair<int, std::vector<int>> greedy_coloring(const PEGraph& g) {
  const std::size_t n = g.n;
  std::vector<int> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && g.adj[i][j]) ++deg[i];
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!removed[i] && (pick == n || deg[i] < deg[pick])) pick = i;
    removed[pick] = true;
    order.push_back(pick);
    for (std::size_t j = 0; j < n; ++j)
      if (!removed[j] && g.adj[pick][j]) --deg[j];
  }
  std::reverse(order.begin(), order.end());
  std::vector<int> color(n, -1);
  int used = 0;
  for (std::size_t v : order) {
    std::vector<bool> taken(n + 1, false);
    for (std::size_t j = 0; j < n; ++j)
      if (g.adj[v][j] && color[j] >= 0) taken[color[j]] = true;
    int c = 0;
    while (taken[c]) ++c;
    color[v] = c;
    used = std::max(used, c + 1);
  }
  return {used, color};
}

int max_clique(const PEGraph& g) {
  const std::size_t n = g.n;
  int best = 0;
  std::vector<std::size_t> cand(n), cur;
  for (std::size_t i = 0; i < n; ++i) cand[i] = i;
  auto rec = [&](auto&& self, std::vector<std::size_t>& cands) -> void {
    if (cur.size() + cands.size() <= static_cast<std::size_t>(best)) return;
    if (cands.empty()) {
      best = std::max<int>(best, static_cast<int>(cur.size()));
      return;
    }
    while (!cands.empty()) {
      if (cur.size() + cands.size() <= static_cast<std::size_t>(best)) return;
      std::size_t v = cands.back();
      cands.pop_back();
      std::vector<std::size_t> next;
      for (std::size_t u : cands)
        if (g.adj[v][u]) next.push_back(u);
      cur.push_back(v);
      self(self, next);
      cur.pop_back();
    }
  };
  rec(rec, cand);
  return best;
}

bool k_colorable(const PEGraph& g, int k, std::vector<int>& color,
                 const std::vector<std::size_t>& order, std::size_t idx) {
  if (idx == order.size()) return true;
  const std::size_t v = order[idx];
  int max_new = 0;
  for (std::size_t i = 0; i < idx; ++i)
    max_new = std::max(max_new, color[order[i]] + 1);
  for (int c = 0; c < std::min(k, max_new + 1); ++c) {
    bool ok = true;
    for (std::size_t j = 0; j < g.n && ok; ++j)
      if (g.adj[v][j] && color[j] == c) ok = false;
    if (!ok) continue;
    color[v] = c;
    if (k_colorable(g, k, color, order, idx + 1)) return true;
    color[v] = -1;
  }
  return false;
}

}  // namespace

ThicknessResult thickness(const PEGraph& g, std::size_t exact_limit) {
  ThicknessResult out;
  if (g.n == 0) {
    out.chi = 0;
    return out;
  }
  auto [greedy_chi, greedy_colors] = greedy_coloring(g);
  if (g.n > exact_limit) {
    out.chi = greedy_chi;
    out.exact = false;
    // Greedy clique seeded at each vertex as a cheap lower bound.
    for (std::size_t s = 0; s < g.n; ++s) {
      std::vector<std::size_t> clique{s};
      for (std::size_t v = 0; v < g.n; ++v) {
        if (v == s) continue;
        bool ok = true;
        for (std::size_t u : clique)
          if (!g.adj[v][u]) {
            ok = false;
            break;
          }
        if (ok) clique.push_back(v);
      }
      out.clique_lb = std::max<int>(out.clique_lb, clique.size());
    }
    return out;
  }
  out.clique_lb = max_clique(g);
  out.exact = true;
  // Descending-degree order tends to fail fast in the backtracker.
  std::vector<std::size_t> order(g.n);
  for (std::size_t i = 0; i < g.n; ++i) order[i] = i;
  std::vector<int> deg(g.n, 0);
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j)
      if (j != i && g.adj[i][j]) ++deg[i];
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
  for (int k = out.clique_lb; k <= greedy_chi; ++k) {
    std::vector<int> color(g.n, -1);
    if (k_colorable(g, k, color, order, 0)) {
      out.chi = k;
      return out;
    }
  }
  out.chi = greedy_chi;
  return out;
}

}  // namespace uq
