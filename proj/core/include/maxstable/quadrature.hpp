#pragma once

#include <functional>
#include <span>
#include <vector>

namespace maxstable {

// Tensor-product Gauss-Legendre integration. Node tables are computed once
// per point count and cached; all evaluation is pure.
struct QuadratureSpec {
  int points_per_axis = 32;  // >= 2
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on (-1, 1), ascending
  std::vector<double> weights;  // matching, sum to 2
};

// Cached rule for an n-point Gauss-Legendre quadrature on [-1, 1].
const GaussLegendreRule& gauss_legendre_rule(int n);

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int points);

// Integral of f over the axis-aligned box [lower, upper], points^d nodes.
// Node contributions are accumulated with a pairwise deterministic sum, so
// the result does not depend on evaluation scheduling.
double tensor_integrate(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> lower,
                        std::span<const double> upper, int points_per_axis);

// Inclusion-exclusion mass assigned to [lower, upper] by a cdf:
//   sum over corners of (-1)^{#lower picks} cdf(corner).
double rectangle_mass(const std::function<double(std::span<const double>)>& cdf,
                      std::span<const double> lower,
                      std::span<const double> upper);

}  // namespace maxstable
