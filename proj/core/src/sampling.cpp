#include "maxstable/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "maxstable/common.hpp"

namespace maxstable {

SampleMatrix::SampleMatrix(long k, int d)
    : k_(k), d_(static_cast<std::size_t>(d)) {
  require(k >= 0, "SampleMatrix: row count must be >= 0");
  require(d >= 1, "SampleMatrix: column count must be >= 1");
  data_.assign(static_cast<std::size_t>(k) * d_, 0.0);
}

std::vector<double> SampleMatrix::column(int j) const {
  require(j >= 0 && j < cols(), "SampleMatrix: column out of range");
  std::vector<double> out(static_cast<std::size_t>(k_));
  for (long i = 0; i < k_; ++i) out[static_cast<std::size_t>(i)] = at(i, j);
  return out;
}

namespace {

// Positive alpha-stable draw (Laplace transform exp(-t^alpha)), alpha in
// (0,1), by the angular representation: S = (A(theta)/W)^{(1-alpha)/alpha}
// with theta uniform on (0, pi) and W unit exponential.
double positive_stable(double alpha, RandomSource& rng) {
  const double theta = std::numbers::pi * rng.next_open01();
  const double w = rng.next_exponential();
  const double a = std::sin((1.0 - alpha) * theta) *
                   std::pow(std::sin(alpha * theta), alpha / (1.0 - alpha)) /
                   std::pow(std::sin(theta), 1.0 / (1.0 - alpha));
  return std::pow(a / w, (1.0 - alpha) / alpha);
}

std::string format_param(double v) { return format_double(v); }

}  // namespace

CopulaSampler independence_sampler(int d) {
  require(d >= 1, "independence_sampler: d >= 1");
  CopulaSampler s;
  s.family = "independence";
  s.dimension = d;
  s.draw = [d](RandomSource& rng) {
    std::vector<double> u(static_cast<std::size_t>(d));
    for (double& v : u) v = rng.next_open01();
    return u;
  };
  return s;
}

CopulaSampler gumbel_hougaard_sampler(double p, int d) {
  require(p >= 1.0, "gumbel_hougaard_sampler: p >= 1");
  require(d >= 1, "gumbel_hougaard_sampler: d >= 1");
  if (p == 1.0) {
    CopulaSampler s = independence_sampler(d);
    s.family = "gumbel-hougaard";
    s.parameters = "p=1";
    return s;
  }
  CopulaSampler s;
  s.family = "gumbel-hougaard";
  s.parameters = "p=" + format_param(p);
  s.dimension = d;
  const double alpha = 1.0 / p;
  s.draw = [d, p, alpha](RandomSource& rng) {
    const double stable = positive_stable(alpha, rng);
    std::vector<double> u(static_cast<std::size_t>(d));
    for (double& v : u) {
      const double e = rng.next_exponential();
      v = std::exp(-std::pow(e / stable, alpha));
    }
    return u;
  };
  return s;
}

namespace {

// Distance kept from the cube boundary when evaluating partials. It matches
// the bisection tolerance below rather than machine epsilon: copulas built
// by composition (the copula-of-maxima map takes an n-th root first) may
// compress a coordinate this close to 1 into exactly 1.0, where partials
// are undefined.
constexpr double kCubeMargin = 1e-12;

// Solve dC/du1(u1, t) = v for t in (0,1). The conditional cdf is
// nondecreasing in t with range spanning v, so bisection always brackets;
// a few Newton steps with the copula density sharpen the root.
double invert_conditional(const Copula& c, double u1, double v) {
  const IndexBlock first({0});
  std::vector<double> point = {u1, 0.0};
  auto cond = [&](double t) {
    point[1] = t;
    return c.block_partial(first, point);
  };
  double lo = kCubeMargin;
  double hi = 1.0 - kCubeMargin;
  if (cond(lo) >= v) return lo;
  if (cond(hi) <= v) return hi;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (cond(mid) < v ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  const IndexBlock both({0, 1});
  for (int step = 0; step < 4; ++step) {
    point[1] = t;
    const double resid = c.block_partial(first, point) - v;
    if (std::fabs(resid) < 1e-13) break;
    const double slope = c.block_partial(both, point);
    if (!(slope > 0.0)) break;
    const double next = t - resid / slope;
    if (next <= lo || next >= hi) break;
    t = next;
  }
  point[1] = t;
  const double resid = std::fabs(c.block_partial(first, point) - v);
  if (!(resid < 1e-10)) {
    // Steep conditionals (densities blowing up toward a corner) can leave a
    // large residual even though the bisection bracket pins t itself to
    // 1e-12. Accept those on the argument scale instead.
    const double slope = c.block_partial(both, point);
    if (!(std::isfinite(slope) && slope > 0.0 && resid / slope < 1e-11))
      throw NumericError(
          "conditional sampler: root residual " + format_double(resid) +
          " at u1=" + format_double(u1) + ", v=" + format_double(v));
  }
  return t;
}

}  // namespace

CopulaSampler conditional_2d_sampler(std::shared_ptr<const Copula> copula) {
  require(copula != nullptr, "conditional_2d_sampler: copula required");
  require(copula->dimension() == 2,
          "conditional_2d_sampler: only bivariate copulas");
  CopulaSampler s;
  s.family = copula->name();
  s.parameters = "conditional-inversion";
  s.dimension = 2;
  s.draw = [copula](RandomSource& rng) {
    const double u1 =
        std::clamp(rng.next_open01(), kCubeMargin, 1.0 - kCubeMargin);
    const double v = rng.next_open01();
    return std::vector<double>{u1, invert_conditional(*copula, u1, v)};
  };
  return s;
}

CopulaSampler extreme_value_sampler(const DNorm& norm) {
  switch (norm.family()) {
    case DNormFamily::logistic:
      return gumbel_hougaard_sampler(norm.p(), norm.dimension());
    case DNormFamily::inclusion_exclusion: {
      if (norm.dimension() != 2)
        throw UnsupportedFamilyError(
            "extreme_value_sampler: inclusion-exclusion only in d = 2");
      auto ev = std::make_shared<ExtremeValueCopula>(norm);
      return conditional_2d_sampler(ev);
    }
    case DNormFamily::sup:
      throw UnsupportedFamilyError(
          "extreme_value_sampler: sup-norm copula has no usable partials");
  }
  throw UnsupportedFamilyError("extreme_value_sampler: unknown family");
}

namespace {

SampleMatrix draw_matrix(const CopulaSampler& base, long k,
                         RandomSource& source) {
  require(k >= 1, "sampling: k >= 1");
  require(base.dimension >= 1 && base.draw != nullptr,
          "sampling: base sampler incomplete");
  SampleMatrix out(k, base.dimension);
  out.provenance.family = base.family;
  out.provenance.parameters = base.parameters;
  out.provenance.seed = source.seed();
  out.provenance.stream = source.stream();
  for (long i = 0; i < k; ++i) {
    const std::vector<double> u = base.draw(source);
    for (int j = 0; j < base.dimension; ++j)
      out.at(i, j) = u[static_cast<std::size_t>(j)];
  }
  return out;
}

}  // namespace

SampleMatrix sample_gumbel_hougaard(double p, int d, long k,
                                    RandomSource& source) {
  return draw_matrix(gumbel_hougaard_sampler(p, d), k, source);
}

SampleMatrix sample_copula_conditional_2d(std::shared_ptr<const Copula> copula,
                                          long k, RandomSource& source) {
  return draw_matrix(conditional_2d_sampler(std::move(copula)), k, source);
}

BlockMaximaSample sample_block_maxima(const CopulaSampler& base, long n, long k,
                                      RandomSource& source) {
  require(n >= 1, "sample_block_maxima: n >= 1");
  require(k >= 1, "sample_block_maxima: k >= 1");
  require(base.dimension >= 1 && base.draw != nullptr,
          "sample_block_maxima: base sampler incomplete");
  const int d = base.dimension;
  BlockMaximaSample out{SampleMatrix(k, d), SampleMatrix(k, d)};
  out.raw.provenance.family = base.family + " block maxima";
  out.raw.provenance.parameters = base.parameters;
  out.raw.provenance.block_size = n;
  out.raw.provenance.seed = source.seed();
  out.raw.provenance.stream = source.stream();
  out.rescaled.provenance = out.raw.provenance;
  out.rescaled.provenance.family = base.family + " rescaled block maxima";
  for (long i = 0; i < k; ++i) {
    std::vector<double> m(static_cast<std::size_t>(d), 0.0);
    for (long rep = 0; rep < n; ++rep) {
      const std::vector<double> u = base.draw(source);
      for (int j = 0; j < d; ++j)
        m[static_cast<std::size_t>(j)] =
            std::max(m[static_cast<std::size_t>(j)],
                     u[static_cast<std::size_t>(j)]);
    }
    for (int j = 0; j < d; ++j) {
      const double raw = m[static_cast<std::size_t>(j)];
      out.raw.at(i, j) = raw;
      out.rescaled.at(i, j) = static_cast<double>(n) * (raw - 1.0);
    }
  }
  return out;
}

SampleMatrix sample_max_stable(const DNorm& norm, long k,
                               RandomSource& source) {
  const CopulaSampler ev = extreme_value_sampler(norm);
  SampleMatrix out = draw_matrix(ev, k, source);
  out.provenance.family = "max-stable(" + norm.name() + ")";
  for (long i = 0; i < k; ++i)
    for (int j = 0; j < out.cols(); ++j)
      out.at(i, j) = std::log(out.at(i, j));
  return out;
}

SampleMatrix transform_margins(const SampleMatrix& sample,
                               std::span<const Margin> margins, long n) {
  require(static_cast<std::size_t>(sample.cols()) == margins.size(),
          "transform_margins: one margin per column");
  SampleMatrix out(sample.rows(), sample.cols());
  out.provenance = sample.provenance;
  out.provenance.family += " + margins";
  for (long i = 0; i < sample.rows(); ++i) {
    try {
      const std::vector<double> x =
          marginal_transform_maxima(sample.row(i), margins, n);
      for (int j = 0; j < sample.cols(); ++j)
        out.at(i, j) = x[static_cast<std::size_t>(j)];
    } catch (const DomainError& e) {
      std::ostringstream msg;
      msg << "transform_margins: row " << i << ": " << e.what();
      throw DomainError(msg.str().c_str());
    }
  }
  return out;
}

}  // namespace maxstable
