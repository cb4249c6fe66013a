#include "uq/demand.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "uq/congestion.hpp"

namespace uq {

double phi_stationary(const Configuration& cfg, int x) {
  double phi = 0.0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const double s = x_separation(cfg, i, x);
    if (s <= 0.0)
      throw std::domain_error("zero x-separation: infinite demand at entity " +
                              std::to_string(i));
    phi += 1.0 / s;
  }
  return phi;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol_abs) {
  if (b <= a) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol_abs, 40);
}

std::vector<double> breakpoints(const Scenario& scn, double t0, double t1) {
  std::set<double> ts{t0, t1};
  for (const auto& traj : scn.trajectories)
    for (const auto& [t, p] : traj.waypoints)
      if (t > t0 && t < t1) ts.insert(t);
  return {ts.begin(), ts.end()};
}

double integral_of(const Scenario& scn, double t0, double t1, double rel_tol,
                   const std::function<double(const Configuration&,
                                              std::size_t)>& per_entity) {
  if (t1 < t0) throw std::invalid_argument("reversed interval");
  if (t1 == t0) return 0.0;
  const auto bps = breakpoints(scn, t0, t1);
  double total = 0.0;
  for (std::size_t i = 0; i < scn.size(); ++i) {
    auto f = [&](double t) {
      const Configuration cfg = configuration_at(scn, t);
      const double v = per_entity(cfg, i);
      if (v <= 0.0)
        throw std::domain_error("vanishing separation inside interval");
      return 1.0 / v;
    };
    // Crude magnitude estimate to turn the relative tolerance absolute.
    double scale = 0.0;
    for (std::size_t b = 0; b + 1 < bps.size(); ++b)
      scale += (bps[b + 1] - bps[b]) * f(0.5 * (bps[b] + bps[b + 1]));
    const double tol_abs = std::max(scale, 1e-12) * rel_tol;
    for (std::size_t b = 0; b + 1 < bps.size(); ++b)
      total += integrate(f, bps[b], bps[b + 1],
                         tol_abs * (bps[b + 1] - bps[b]) / (t1 - t0));
  }
  return total;
}

}  // namespace

double phi_integral(const Scenario& scn, int x, double t0, double t1,
                    double rel_tol) {
  return integral_of(scn, t0, t1, rel_tol,
                     [x](const Configuration& cfg, std::size_t i) {
                       return x_separation(cfg, i, x);
                     });
}

namespace {

int measure_value(const Configuration& cfg, const std::vector<int>& k,
                  double gamma, Measure measure) {
  std::vector<Region> regions;
  regions.reserve(cfg.size());
  for (std::size_t i = 0; i < cfg.size(); ++i)
    regions.push_back(Region{cfg.centers[i], cfg.rho + k[i] * gamma, false});
  if (measure == Measure::degree) return degree(build_pe_graph(regions)).delta;
  return ply(regions, cfg.dim).ply;
}

double max_gamma_for_perm(const Configuration& cfg, const std::vector<int>& k,
                          int x, Measure measure, int steps) {
  auto feasible = [&](double g) {
    return measure_value(cfg, k, g, measure) <= x;
  };
  double hi = 1.0;
  int guard = 0;
  while (feasible(hi) && guard++ < 200) hi *= 2.0;
  if (guard >= 200) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  for (int s = 0; s < steps; ++s) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

GammaResult gamma_fixed_target(const Configuration& cfg, int x,
                               Measure measure, std::size_t exact_limit,
                               int bisection_steps) {
  const std::size_t n = cfg.size();
  GammaResult out;
  if (n <= 1) {
    out.gamma = std::numeric_limits<double>::infinity();
    return out;
  }
  if (n <= exact_limit) {
    std::vector<int> k(n);
    std::iota(k.begin(), k.end(), 1);
    double best = 0.0;
    do {
      // Skip permutations that cannot beat the incumbent.
      if (best > 0.0 && measure_value(cfg, k, best * (1.0 + 1e-12), measure) > x)
        continue;
      best = std::max(best,
                      max_gamma_for_perm(cfg, k, x, measure, bisection_steps));
      if (std::isinf(best)) break;
    } while (std::next_permutation(k.begin(), k.end()));
    out.gamma = best;
    out.exact = true;
    return out;
  }
  // Greedy: the largest multiplier goes to the most separated entity.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = x_separation(cfg, i, x);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return sigma[a] < sigma[b]; });
  std::vector<int> k(n);
  for (std::size_t rank = 0; rank < n; ++rank)
    k[order[rank]] = static_cast<int>(rank) + 1;
  out.gamma = max_gamma_for_perm(cfg, k, x, measure, bisection_steps);
  out.exact = false;
  return out;
}

double mu_uniformity(const Scenario& scn, int x, double t0, double t1,
                     double rel_tol) {
  if (2 * x > static_cast<int>(scn.size()) - 1)
    throw std::out_of_range("mu requires 2x <= n - 1");
  const double scale = std::pow(2.0, 1.0 / scn.dim);
  if (t1 <= t0) {
    const Configuration cfg = configuration_at(scn, t0);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
      num += 1.0 / x_radius(cfg, i, 2 * x);
      den += 1.0 / x_radius(cfg, i, x);
    }
    return scale * num / den;
  }
  auto r_of = [](int xx) {
    return [xx](const Configuration& cfg, std::size_t i) {
      return x_radius(cfg, i, xx);
    };
  };
  const double num = integral_of(scn, t0, t1, rel_tol, r_of(2 * x));
  const double den = integral_of(scn, t0, t1, rel_tol, r_of(x));
  return scale * num / den;
}

}  // namespace uq
