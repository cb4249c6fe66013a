#pragma once

#include <utility>

#include "uq/motion.hpp"

namespace uq {

// Default relative tolerance for the demand quadrature.
inline constexpr double kQuadRelTol = 1e-6;

enum class Measure { degree, ply };

// Stationary frequency demand: sum over entities of 1 / sigma_i(x).
// Throws on a vanishing x-separation (infinite demand).
double phi_stationary(const Configuration& cfg, int x);

// Integral of the stationary demand over the interval [t0, t1], using
// adaptive Simpson quadrature per entity, subdivided at waypoint times.
double phi_integral(const Scenario& scn, int x, double t0, double t1,
                    double rel_tol = kQuadRelTol);

struct GammaResult {
  double gamma = 0.0;  // +inf for a single entity
  bool exact = true;
};

// Largest uniform query spacing gamma admitting a permutation k of
// 1..n such that regions of radius rho + k_i * gamma keep the chosen
// congestion measure at most x. Exact (permutation search plus
// bisection) up to exact_limit entities; greedy beyond.
GammaResult gamma_fixed_target(const Configuration& cfg, int x,
                               Measure measure, std::size_t exact_limit = 8,
                               int bisection_steps = 40);

// x-uniformity: ratio of 1/r(2x) to 1/r(x) integrals, scaled by 2^(1/d).
// A degenerate interval (t0 == t1) evaluates the stationary variant.
double mu_uniformity(const Scenario& scn, int x, double t0, double t1,
                     double rel_tol = kQuadRelTol);

}  // namespace uq
