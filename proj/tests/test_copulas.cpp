#include <doctest.h>

#include <cmath>
#include <vector>

#include "maxstable/copulas.hpp"
#include "oracles.hpp"

using namespace maxstable;

namespace {

double rect_mass_2d(const Copula& c, double a1, double b1, double a2,
                    double b2) {
  const std::vector<double> bb{b1, b2}, ab{a1, b2}, ba{b1, a2}, aa{a1, a2};
  return c.cdf(bb) - c.cdf(ab) - c.cdf(ba) + c.cdf(aa);
}

double rect_mass_3d(const Copula& c, const std::vector<double>& lo,
                    const std::vector<double>& hi) {
  double m = 0.0;
  for (int corner = 0; corner < 8; ++corner) {
    std::vector<double> pt(3);
    int ones = 0;
    for (int j = 0; j < 3; ++j) {
      const bool up = corner & (1 << j);
      pt[j] = up ? hi[j] : lo[j];
      ones += up;
    }
    m += ((3 - ones) % 2 == 0 ? 1.0 : -1.0) * c.cdf(pt);
  }
  return m;
}

}  // namespace

TEST_CASE("hand-evaluated closed forms pin the copula cdfs") {
  // Independence: product of coordinates.
  GumbelHougaardCopula indep(2, 1.0);
  CHECK(indep.cdf(std::vector<double>{0.5, 0.5}) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(indep.cdf(std::vector<double>{0.3, 0.7}) == doctest::Approx(0.21).epsilon(1e-14));

  // Harmonic-correction copula, d = 2: oracle is the inline evaluation of
  // u1 + u2 - 1 + (1/(1-u1) + 1/(1-u2) - 1)^{-1}.
  const double u1 = 0.5, u2 = 0.5;
  const double oracle_ie =
      u1 + u2 - 1.0 + 1.0 / (1.0 / (1.0 - u1) + 1.0 / (1.0 - u2) - 1.0);
  CHECK(oracle_ie == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  InclusionExclusionCopula ie2(2);
  CHECK(ie2.cdf(std::vector<double>{0.5, 0.5}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // Extreme-value copula of the inclusion-exclusion norm at (1/e, 1/e):
  // ||(-1,-1)||_D = 1 + 1 - (1/1 + 1/1)^{-1} = 3/2, so C = exp(-3/2).
  ExtremeValueCopula ev(DNorm::inclusion_exclusion(2));
  const double u = std::exp(-1.0);
  CHECK(ev.cdf(std::vector<double>{u, u}) ==
        doctest::Approx(std::exp(-1.5)).epsilon(1e-14));

  // Gumbel-Hougaard p = 2 at (1/e, 1/e): exp(-sqrt(2)).
  GumbelHougaardCopula gh(2, 2.0);
  CHECK(gh.cdf(std::vector<double>{u, u}) ==
        doctest::Approx(std::exp(-std::sqrt(2.0))).epsilon(1e-14));
  CHECK(gh.p() == 2.0);
}

TEST_CASE("generalized Pareto copula: exact region, cdf, partials") {
  GeneralizedParetoCopula gpc(DNorm::logistic(2, 2.0));
  CHECK(gpc.u0() == std::vector<double>{0.5, 0.5});

  // cdf = 1 - ||1-u||_2 inside the region.
  const std::vector<double> pt{0.9, 0.9};
  CHECK(gpc.cdf(pt) ==
        doctest::Approx(1.0 - 0.1 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(gpc.cdf(std::vector<double>{1.0, 1.0}) == doctest::Approx(1.0));

  // Finite-difference oracle for the first partial, then the closed form:
  // d/du1 [1 - ||1-u||_2] at (0.9, 0.9) is (1-u1)/||1-u|| = 1/sqrt(2).
  const double h = 1e-6;
  const double fd = (gpc.cdf(std::vector<double>{0.9 + h, 0.9}) -
                     gpc.cdf(std::vector<double>{0.9 - h, 0.9})) /
                    (2.0 * h);
  const IndexBlock b0({0});
  CHECK(gpc.block_partial(b0, pt) == doctest::Approx(fd).epsilon(1e-8));
  CHECK(gpc.block_partial(b0, pt) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));

  CHECK_THROWS_AS(gpc.cdf(std::vector<double>{0.4, 0.9}), DomainError);
  CHECK_THROWS_AS((void)gpc.block_partial(b0, std::vector<double>{0.9, 1.0}),
                  DomainError);

  // d = 1: the identity copula is exact on the whole interval.
  GeneralizedParetoCopula line(DNorm::logistic(1, 1.0));
  CHECK(line.u0() == std::vector<double>{0.0});
  CHECK(line.cdf(std::vector<double>{0.37}) == doctest::Approx(0.37).epsilon(1e-15));
  CHECK(line.block_partial(IndexBlock({0}), std::vector<double>{0.37}) ==
        doctest::Approx(1.0).epsilon(1e-15));

  // Explicit thresholds must be interior for d >= 2.
  CHECK_THROWS_AS(GeneralizedParetoCopula(DNorm::logistic(2, 2.0),
                                          std::vector<double>{0.0, 0.5}),
                  DomainError);
}

TEST_CASE("inclusion-exclusion copula: hand-differentiated density") {
  InclusionExclusionCopula c(2);
  const double u1 = 0.5, u2 = 0.5;
  // Oracle first: differentiate u1 + u2 - 1 + v^{-1} by hand, with
  // v = 1/(1-u1) + 1/(1-u2) - 1 and dv/du_i = (1-u_i)^{-2}:
  //   d2C/du1du2 = 2 v^{-3} (1-u1)^{-2} (1-u2)^{-2}.
  const double v = 1.0 / (1.0 - u1) + 1.0 / (1.0 - u2) - 1.0;
  const double oracle =
      2.0 * std::pow(v, -3.0) / ((1.0 - u1) * (1.0 - u1) * (1.0 - u2) * (1.0 - u2));
  CHECK(oracle == doctest::Approx(32.0 / 27.0).epsilon(1e-15));

  const std::vector<double> pt{u1, u2};
  CHECK(c.density(pt) == doctest::Approx(32.0 / 27.0).epsilon(1e-13));
  CHECK(c.block_partial(IndexBlock::full(2), pt) ==
        doctest::Approx(32.0 / 27.0).epsilon(1e-13));

  // First partial: 1 - v^{-2} (1-u1)^{-2} = 1 - 4/9 = 5/9.
  CHECK(c.block_partial(IndexBlock({0}), pt) ==
        doctest::Approx(5.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("independence density is identically 1") {
  GumbelHougaardCopula indep(2, 1.0);
  oracles::TestRng rng(417);
  for (int i = 0; i < 25; ++i) {
    const std::vector<double> pt{rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
    CHECK(indep.density(pt) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("uniform margins on a 21-point grid") {
  const auto margin_check = [](const Copula& c, double lo, double tol) {
    const int d = c.dimension();
    for (int j = 0; j < d; ++j) {
      for (int g = 0; g <= 20; ++g) {
        const double uj = lo + (1.0 - lo) * g / 20.0;
        std::vector<double> pt(static_cast<std::size_t>(d), 1.0);
        pt[static_cast<std::size_t>(j)] = uj;
        CHECK(c.cdf(pt) == doctest::Approx(uj).epsilon(tol));
      }
    }
  };
  margin_check(GumbelHougaardCopula(2, 1.0), 0.0, 1e-10);
  margin_check(GumbelHougaardCopula(3, 2.5), 0.0, 1e-10);
  margin_check(InclusionExclusionCopula(2), 0.0, 1e-10);
  margin_check(InclusionExclusionCopula(3), 0.0, 1e-10);
  margin_check(InclusionExclusionCopula(4), 0.0, 1e-10);
  margin_check(ExtremeValueCopula(DNorm::inclusion_exclusion(3)), 0.0, 1e-10);
  margin_check(ExtremeValueCopula(DNorm::sup(2)), 0.0, 1e-10);
  margin_check(GeneralizedParetoCopula(DNorm::logistic(2, 2.0)), 0.5, 1e-10);
  margin_check(GeneralizedParetoCopula(DNorm::inclusion_exclusion(3)), 0.5,
               1e-10);
}

TEST_CASE("max-stability of extreme-value families") {
  const GumbelHougaardCopula gh(2, 2.0);
  const GumbelHougaardCopula indep(2, 1.0);
  const ExtremeValueCopula ev_ie(DNorm::inclusion_exclusion(2));
  const ExtremeValueCopula ev3(DNorm::logistic(3, 3.5));

  const auto check_family = [](const Copula& c) {
    const int d = c.dimension();
    oracles::TestRng rng(1031);
    for (int i = 0; i < 40; ++i) {
      std::vector<double> pt(static_cast<std::size_t>(d));
      for (auto& v : pt) v = rng.uniform(0.05, 0.98);
      const double base = c.cdf(pt);
      for (double t : {2.0, 5.0, 10.0}) {
        std::vector<double> root(pt.size());
        for (std::size_t j = 0; j < pt.size(); ++j)
          root[j] = std::pow(pt[j], 1.0 / t);
        CHECK(std::pow(c.cdf(root), t) == doctest::Approx(base).epsilon(1e-12));
      }
    }
  };
  check_family(gh);
  check_family(indep);
  check_family(ev_ie);
  check_family(ev3);
}

TEST_CASE("rectangle masses are nonnegative for globally defined families") {
  const GumbelHougaardCopula gh(2, 3.0);
  const InclusionExclusionCopula ie2(2);
  const ExtremeValueCopula ev(DNorm::inclusion_exclusion(2));
  oracles::TestRng rng(2203);
  for (int i = 0; i < 1000; ++i) {
    const double a1 = rng.uniform(0.0, 1.0), a2 = rng.uniform(0.0, 1.0);
    const double b1 = rng.uniform(a1, 1.0), b2 = rng.uniform(a2, 1.0);
    CHECK(rect_mass_2d(gh, a1, b1, a2, b2) >= -1e-12);
    CHECK(rect_mass_2d(ie2, a1, b1, a2, b2) >= -1e-12);
    CHECK(rect_mass_2d(ev, a1, b1, a2, b2) >= -1e-12);
  }
  const InclusionExclusionCopula ie3(3);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> lo(3), hi(3);
    for (int j = 0; j < 3; ++j) {
      lo[static_cast<std::size_t>(j)] = rng.uniform(0.0, 1.0);
      hi[static_cast<std::size_t>(j)] =
          rng.uniform(lo[static_cast<std::size_t>(j)], 1.0);
    }
    CHECK(rect_mass_3d(ie3, lo, hi) >= -1e-12);
  }
}

TEST_CASE("densities agree with nested central differences of the cdf") {
  oracles::TestRng rng(7411);

  const auto fd_check = [&](const Copula& c, double lo, double hi, double h,
                            double tol, int points) {
    const int d = c.dimension();
    const auto cdf = [&](std::span<const double> u) { return c.cdf(u); };
    for (int i = 0; i < points; ++i) {
      std::vector<double> pt(static_cast<std::size_t>(d));
      for (auto& v : pt) v = rng.uniform(lo, hi);
      std::vector<int> all(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) all[static_cast<std::size_t>(j)] = j;
      const double oracle =
          oracles::mixed_central_difference(cdf, pt, all, h);
      const double got = c.density(pt);
      CHECK(got == doctest::Approx(oracle).epsilon(tol));
    }
  };

  // Order-2 stencils tolerate a smaller step than order-3 ones, where
  // subtractive cancellation grows like (2h)^{-3}.
  fd_check(GumbelHougaardCopula(2, 2.5), 0.15, 0.85, 1e-3, 1e-4, 20);
  fd_check(ExtremeValueCopula(DNorm::inclusion_exclusion(2)), 0.15, 0.85, 1e-3,
           1e-4, 20);
  fd_check(InclusionExclusionCopula(2), 0.15, 0.85, 1e-3, 1e-4, 20);
  fd_check(GeneralizedParetoCopula(DNorm::logistic(2, 1.6)), 0.6, 0.93, 1e-3,
           1e-4, 20);
  fd_check(GumbelHougaardCopula(3, 1.8), 0.25, 0.8, 2e-3, 1e-4, 12);
  fd_check(InclusionExclusionCopula(3), 0.25, 0.8, 2e-3, 1e-4, 12);
}

TEST_CASE("block partials below full order also match finite differences") {
  oracles::TestRng rng(911);
  const GumbelHougaardCopula gh(3, 2.2);
  const InclusionExclusionCopula ie(3);
  const auto check_block = [&](const Copula& c, const std::vector<int>& idx) {
    const auto cdf = [&](std::span<const double> u) { return c.cdf(u); };
    for (int i = 0; i < 10; ++i) {
      std::vector<double> pt{rng.uniform(0.25, 0.8), rng.uniform(0.25, 0.8),
                             rng.uniform(0.25, 0.8)};
      const double oracle = oracles::mixed_central_difference(cdf, pt, idx, 1e-3);
      CHECK(c.block_partial(IndexBlock(std::vector<int>(idx)), pt) ==
            doctest::Approx(oracle).epsilon(5e-5));
    }
  };
  check_block(gh, {0});
  check_block(gh, {1, 2});
  check_block(ie, {1});
  check_block(ie, {0, 2});
}

TEST_CASE("tail expansion residual vanishes at the generalized Pareto form") {
  GeneralizedParetoCopula gpc(DNorm::logistic(2, 2.0));
  const std::vector<double> w{1.0, 1.0};
  // Identically zero in exact arithmetic; computing through the cdf leaves
  // only the rounding of 1 - t*||w||, about an ulp divided by t.
  for (double t : {0.5, 0.25, 0.125}) {
    CHECK(std::fabs(scaled_expansion_residual(gpc, w, t)) < 1e-14);
  }
  const std::vector<double> w2{0.7, 0.3};
  CHECK(std::fabs(scaled_expansion_residual(gpc, w2, 0.3)) < 1e-13);
}

TEST_CASE("tail expansion residual decays for attracted families") {
  GumbelHougaardCopula gh(2, 2.0);
  const std::vector<double> w{1.0, 1.0};
  const double r1 = std::fabs(scaled_expansion_residual(gh, w, 1e-1));
  const double r2 = std::fabs(scaled_expansion_residual(gh, w, 1e-2));
  CHECK(r2 < r1);

  InclusionExclusionCopula ie(2);
  double prev = std::fabs(scaled_expansion_residual(ie, w, 1e-1));
  for (double t : {1e-2, 1e-3, 1e-4}) {
    const double r = std::fabs(scaled_expansion_residual(ie, w, t));
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("scaled partial derivatives approach the norm partials") {
  const std::vector<int> schedule{100, 1000, 10000};
  const std::vector<double> x{-1.0, -1.0};

  SUBCASE("harmonic-correction copula, full block") {
    InclusionExclusionCopula ie(2);
    const auto rows =
        scaled_partial_limit_check(ie, IndexBlock::full(2), x, schedule);
    REQUIRE(rows.size() == 3);
    // target = -d^2 ||x||_D / dx1 dx2 = +1/4 at (-1,-1).
    CHECK(rows[0].target == doctest::Approx(0.25).epsilon(1e-14));
    double prev_gap = 1e300;
    for (const auto& r : rows) {
      const double gap = std::fabs(r.value - r.target);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap < 1e-3);
  }

  SUBCASE("generalized Pareto copula is exact at every scale") {
    GeneralizedParetoCopula gpc(DNorm::logistic(2, 2.0));
    for (const auto& blk :
         {IndexBlock({0}), IndexBlock({1}), IndexBlock::full(2)}) {
      const auto rows = scaled_partial_limit_check(gpc, blk, x, schedule);
      for (const auto& r : rows)
        CHECK(r.value == doctest::Approx(r.target).epsilon(1e-12));
    }
  }

  SUBCASE("Gumbel-Hougaard single partial") {
    GumbelHougaardCopula gh(2, 2.0);
    const auto rows =
        scaled_partial_limit_check(gh, IndexBlock({0}), x, schedule);
    double prev_gap = 1e300;
    for (const auto& r : rows) {
      const double gap = std::fabs(r.value - r.target);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
  }
}

TEST_CASE("copula domain and family errors") {
  GumbelHougaardCopula gh(2, 2.0);
  CHECK_THROWS_AS(gh.cdf(std::vector<double>{1.2, 0.5}), DomainError);
  CHECK_THROWS_AS(gh.cdf(std::vector<double>{-0.1, 0.5}), DomainError);
  CHECK_THROWS_AS((void)gh.density(std::vector<double>{0.0, 0.5}), DomainError);
  CHECK_THROWS_AS((void)gh.density(std::vector<double>{1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(gh.cdf(std::vector<double>{0.5}), DomainError);

  // The sup norm has no order-d partials, so its extreme-value copula can
  // evaluate but not differentiate.
  ExtremeValueCopula ev_sup(DNorm::sup(2));
  CHECK(ev_sup.cdf(std::vector<double>{0.4, 0.7}) == doctest::Approx(0.4));
  CHECK_THROWS_AS((void)ev_sup.density(std::vector<double>{0.4, 0.7}),
                  UnsupportedFamilyError);
}
