#include "maxstable/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>

#include "maxstable/common.hpp"

namespace maxstable {

namespace {

// Newton iteration on the Legendre recurrence. Roots are symmetric, so only
// the lower half is solved; each root starts from the Chebyshev estimate.
GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

std::map<int, GaussLegendreRule>& rule_cache() {
  static std::map<int, GaussLegendreRule> cache;
  return cache;
}

std::mutex& rule_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int n) {
  require(n >= 2, "gauss_legendre_rule: need at least 2 points");
  require(n <= 4096, "gauss_legendre_rule: point count too large");
  std::lock_guard<std::mutex> lock(rule_mutex());
  auto& cache = rule_cache();
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int points) {
  require(a <= b, "integrate_1d: reversed interval");
  const auto& rule = gauss_legendre_rule(points);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::vector<double> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    terms[i] = rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * pairwise_sum(terms);
}

double tensor_integrate(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> lower,
                        std::span<const double> upper, int points_per_axis) {
  const int d = static_cast<int>(lower.size());
  require(d >= 1 && d <= kDefaultMaxDimension, "tensor_integrate: bad dimension");
  require(upper.size() == lower.size(), "tensor_integrate: corner mismatch");
  double volume_scale = 1.0;
  for (int j = 0; j < d; ++j) {
    require(lower[static_cast<std::size_t>(j)] <=
                upper[static_cast<std::size_t>(j)],
            "tensor_integrate: reversed box");
    volume_scale *= 0.5 * (upper[static_cast<std::size_t>(j)] -
                           lower[static_cast<std::size_t>(j)]);
  }
  const auto& rule = gauss_legendre_rule(points_per_axis);
  const std::size_t per_axis = rule.nodes.size();

  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= per_axis;
  std::vector<double> terms(total);
  std::vector<double> point(static_cast<std::size_t>(d));
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double w = 1.0;
    std::size_t rem = flat;
    // Row-major: the last axis varies fastest.
    for (int j = d - 1; j >= 0; --j) {
      const std::size_t i = rem % per_axis;
      rem /= per_axis;
      idx[static_cast<std::size_t>(j)] = i;
      const double mid = 0.5 * (upper[static_cast<std::size_t>(j)] +
                                lower[static_cast<std::size_t>(j)]);
      const double half = 0.5 * (upper[static_cast<std::size_t>(j)] -
                                 lower[static_cast<std::size_t>(j)]);
      point[static_cast<std::size_t>(j)] = mid + half * rule.nodes[i];
      w *= rule.weights[i];
    }
    const double v = f(point);
    if (!std::isfinite(v))
      throw NumericError("tensor_integrate: non-finite integrand at " +
                         format_point(point));
    terms[flat] = w * v;
  }
  return volume_scale * pairwise_sum(terms);
}

double rectangle_mass(const std::function<double(std::span<const double>)>& cdf,
                      std::span<const double> lower,
                      std::span<const double> upper) {
  const int d = static_cast<int>(lower.size());
  require(d >= 1 && d <= kDefaultMaxDimension, "rectangle_mass: bad dimension");
  require(upper.size() == lower.size(), "rectangle_mass: corner mismatch");
  std::vector<double> corner(static_cast<std::size_t>(d));
  std::vector<double> terms(std::size_t{1} << d);
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    int low_picks = 0;
    for (int j = 0; j < d; ++j) {
      const bool low = mask & (1u << j);
      corner[static_cast<std::size_t>(j)] =
          low ? lower[static_cast<std::size_t>(j)]
              : upper[static_cast<std::size_t>(j)];
      low_picks += low;
    }
    const double sign = (low_picks % 2 == 0) ? 1.0 : -1.0;
    terms[mask] = sign * cdf(corner);
  }
  return pairwise_sum(terms);
}

}  // namespace maxstable
