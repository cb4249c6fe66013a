#include "uq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uq {

double dist(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

void Configuration::check() const {
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (static_cast<int>(centers[i].size()) != dim)
      throw std::invalid_argument("center " + std::to_string(i) +
                                  " has wrong dimension");
  }
  if (rho < 0.0) throw std::invalid_argument("rho must be nonnegative");
  if (!enforce_disjoint) return;
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j)
      if (dist(centers[i], centers[j]) - 2.0 * rho < -kGeomTol)
        throw std::invalid_argument("entities " + std::to_string(i) + " and " +
                                    std::to_string(j) + " overlap");
}

int x_hat_for_dim(int dim) {
  if (dim == 1) return 3;
  if (dim == 2) return 7;
  // Conservative: the surrogate packing bound only becomes positive
  // beyond 3^d in higher dimensions.
  double v = 1.0;
  for (int k = 0; k < dim; ++k) v *= 3.0;
  return static_cast<int>(v);
}

namespace {

// In d = 2, any x - 1 unit disks at separation <= c from a central unit
// disk have centers in the annulus [2, 2+c], pairwise >= 2 apart, which
// forces angular spacing of at least 2*asin(sqrt(4-c^2)/(2(2+c))).
// The smallest c admitting x - 1 such disks in a single ring is a valid
// lower bound on the true packing constant.
double ring_bound_2d(int x) {
  auto angle_budget = [&](double c) {
    const double s = std::sqrt(std::max(0.0, 4.0 - c * c)) / (2.0 * (2.0 + c));
    return (x - 1) * 2.0 * std::asin(std::min(1.0, s));
  };
  double lo = 0.0, hi = 2.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (angle_budget(mid) > 2.0 * std::numbers::pi)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace

DimConstants dim_constants(int dim, int x) {
  const int xh = x_hat_for_dim(dim);
  if (x <= xh)
    throw std::domain_error("x = " + std::to_string(x) +
                            " is at most x_hat = " + std::to_string(xh) +
                            " for dimension " + std::to_string(dim));
  DimConstants k;
  k.dim = dim;
  k.x = x;
  k.x_hat = xh;
  if (dim == 1) {
    // Exact: unit intervals chained at spacing 2 on each side.
    k.c = 2.0 * std::ceil((x - 3) / 2.0);
  } else {
    // Volume bound: all x unit balls fit in a concentric ball of
    // radius 3 + c, so c >= x^(1/d) - 3.
    const double vol = std::pow(static_cast<double>(x), 1.0 / dim) - 3.0;
    if (vol > 0.0) {
      k.c = vol;
    } else if (dim == 2) {
      k.c = ring_bound_2d(x);
    } else {
      throw std::domain_error("no positive packing bound for d = " +
                              std::to_string(dim) + ", x = " +
                              std::to_string(x));
    }
  }
  k.lambda = k.c / (1.0 + k.c);
  return k;
}

int DimConstants::cover_bound(double alpha) const {
  if (alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
  if (dim == 1) return 2;
  if (dim == 2) {
    const double theta = 2.0 * std::asin(1.0 / (4.0 * alpha));
    return static_cast<int>(std::floor(2.0 * std::numbers::pi / theta));
  }
  throw std::domain_error("cover bound not provided for d >= 3");
}

double separation(const Configuration& cfg, std::size_t i, std::size_t j) {
  if (i >= cfg.size() || j >= cfg.size())
    throw std::out_of_range("entity index out of range");
  if (i == j) throw std::invalid_argument("separation requires i != j");
  return dist(cfg.centers[i], cfg.centers[j]) - 2.0 * cfg.rho;
}

double x_separation(const Configuration& cfg, std::size_t i, int x) {
  const std::size_t n = cfg.size();
  if (i >= n) throw std::out_of_range("entity index out of range");
  if (x < 1 || static_cast<std::size_t>(x) > n - 1)
    throw std::out_of_range("x must be in [1, n-1]");
  std::vector<std::pair<double, std::size_t>> seps;
  seps.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j)
    if (j != i) seps.emplace_back(separation(cfg, i, j), j);
  std::nth_element(seps.begin(), seps.begin() + (x - 1), seps.end());
  return seps[x - 1].first;
}

double x_radius(const Configuration& cfg, std::size_t i, int x) {
  return cfg.rho + x_separation(cfg, i, x);
}

std::vector<std::size_t> gamma_x_neighbors(const Configuration& cfg,
                                           std::size_t i, int x) {
  const double sigma = x_separation(cfg, i, x);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    if (j == i) {
      out.push_back(j);
      continue;
    }
    const double d = dist(cfg.centers[i], cfg.centers[j]);
    // Strict interior intersection; coincident centers always count.
    if (d <= kGeomTol || d < sigma + 2.0 * cfg.rho - kGeomTol) out.push_back(j);
  }
  return out;
}

int verify_ball_cover(const Configuration& cfg, const Point& probe_center,
                      double probe_radius, int x, double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
  int count = 0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const double ri = alpha * x_radius(cfg, i, x);
    if (ri + kGeomTol < probe_radius) continue;
    if (dist(cfg.centers[i], probe_center) <= ri + probe_radius + kGeomTol)
      ++count;
  }
  return count;
}

}  // namespace uq
