#include <cmath>
#include <vector>

#include "doctest.h"
#include "maxstable/common.hpp"
#include "maxstable/stats.hpp"
#include "oracles.hpp"

using namespace maxstable;

namespace {

// Quadratic-time tau-b straight from the definition, as the oracle for the
// merge-sort implementation.
double tau_brute(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t k = x.size();
  double concordant = 0.0, discordant = 0.0;
  double tied_x = 0.0, tied_y = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        tied_x += 1.0;
      } else if (dy == 0.0) {
        tied_y += 1.0;
      } else if (dx * dy > 0.0) {
        concordant += 1.0;
      } else {
        discordant += 1.0;
      }
    }
  const double n0 = static_cast<double>(k) * (k - 1) / 2.0;
  double joint = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (x[i] == x[j] && y[i] == y[j]) joint += 1.0;
  // Pairs tied in x (including joint ties) and in y, per the tau-b formula.
  const double nx = tied_x + joint;
  const double ny = tied_y + joint;
  return (concordant - discordant) /
         std::sqrt((n0 - nx) * (n0 - ny));
}

}  // namespace

TEST_CASE("summary statistics on tiny hand cases") {
  const std::vector<double> a = {1.0, 2.0, 3.0, 6.0};
  CHECK(sample_mean(a) == doctest::Approx(3.0).epsilon(1e-15));

  const std::vector<double> up = {0.0, 1.0, 2.0};
  const std::vector<double> down = {4.0, 2.0, 0.0};
  CHECK(sample_correlation(up, up) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sample_correlation(up, down) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  const std::vector<double> flat = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS(sample_correlation(up, flat), DomainError);
}

TEST_CASE("kendall tau matches the quadratic definition") {
  // Perfect monotone association first.
  const std::vector<double> x = {0.1, 0.4, 0.7, 0.9};
  const std::vector<double> rev = {0.9, 0.7, 0.4, 0.1};
  CHECK(kendall_tau(x, x) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kendall_tau(x, rev) == doctest::Approx(-1.0).epsilon(1e-15));

  // One discordant pair among 4: hand count gives (5 - 1)/6.
  const std::vector<double> y = {0.2, 0.3, 0.9, 0.5};
  CHECK(tau_brute(x, y) == doctest::Approx((5.0 - 1.0) / 6.0).epsilon(1e-15));
  CHECK(kendall_tau(x, y) ==
        doctest::Approx(tau_brute(x, y)).epsilon(1e-14));

  oracles::TestRng rng(4242);
  SUBCASE("random continuous data") {
    std::vector<double> u(200), v(200);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = rng.uniform(0.0, 1.0);
      v[i] = 0.3 * u[i] + rng.uniform(0.0, 1.0);
    }
    CHECK(kendall_tau(u, v) ==
          doctest::Approx(tau_brute(u, v)).epsilon(1e-13));
  }
  SUBCASE("data with ties in both coordinates") {
    std::vector<double> u(151), v(151);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = std::floor(rng.uniform(0.0, 8.0));
      v[i] = std::floor(rng.uniform(0.0, 5.0)) - 0.25 * u[i];
    }
    CHECK(kendall_tau(u, v) ==
          doctest::Approx(tau_brute(u, v)).epsilon(1e-13));
  }
  const std::vector<double> constant = {2.0, 2.0, 2.0};
  const std::vector<double> other = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(kendall_tau(constant, other), DomainError);
}

TEST_CASE("kolmogorov-smirnov statistic by hand") {
  // Sorted data {0.1, 0.5, 0.9} against the uniform cdf: the largest of
  // max(i/k - F, F - (i-1)/k) is 1/3 - 0.1 = 7/30.
  const std::vector<double> data = {0.9, 0.1, 0.5};
  double worst = 0.0;
  const std::vector<double> sorted = {0.1, 0.5, 0.9};
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    worst = std::max(worst, (i + 1.0) / 3.0 - sorted[i]);
    worst = std::max(worst, sorted[i] - i / 3.0);
  }
  CHECK(worst == doctest::Approx(7.0 / 30.0).epsilon(1e-15));
  CHECK(ks_statistic_uniform01(data) ==
        doctest::Approx(worst).epsilon(1e-15));

  // Against the correct continuous cdf the statistic shrinks with k on a
  // deterministic quantile sample.
  std::vector<double> grid(1000);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = (i + 0.5) / 1000.0;
  // Midpoint sample: every deviation is exactly half a cell.
  CHECK(ks_statistic_uniform01(grid) == doctest::Approx(5e-4).epsilon(1e-12));

  auto expo_cdf = [](double t) { return t <= 0.0 ? 0.0 : -std::expm1(-t); };
  std::vector<double> expo(500);
  for (std::size_t i = 0; i < expo.size(); ++i)
    expo[i] = -std::log(1.0 - (i + 0.5) / 500.0);
  CHECK(ks_statistic(expo, expo_cdf) < 0.002);

  CHECK(ks_critical_1pct(10000) == doctest::Approx(0.0163).epsilon(1e-12));
  CHECK(ks_critical_1pct(1) == doctest::Approx(1.63).epsilon(1e-15));
}
