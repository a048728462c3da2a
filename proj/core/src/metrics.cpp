#include "maxstable/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "maxstable/common.hpp"

namespace maxstable {

namespace {

BoxOrientation classify_box(std::span<const double> lower,
                            std::span<const double> upper) {
  bool negative = true;
  bool cube = true;
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (upper[j] > 0.0) negative = false;
    if (lower[j] < 0.0 || upper[j] > 1.0) cube = false;
  }
  if (negative) return BoxOrientation::negative_orthant;
  if (cube) return BoxOrientation::unit_cube;
  throw DomainError(
      "box region must lie in the negative orthant or in the unit cube");
}

double checked_mass(const ScalarField& cdf, std::span<const double> lower,
                    std::span<const double> upper, const char* label) {
  const double mass = rectangle_mass(cdf, lower, upper);
  if (!std::isfinite(mass) || mass < -1e-9 || mass > 1.0 + 1e-9)
    throw NumericError(std::string("tv_distance_box: ") + label +
                       " assigns mass " + format_double(mass) +
                       " to the box");
  return std::clamp(mass, 0.0, 1.0);
}

}  // namespace

BoxRegion::BoxRegion(std::vector<double> lower_corner,
                     std::vector<double> upper_corner)
    : lower(std::move(lower_corner)), upper(std::move(upper_corner)) {
  require(!lower.empty(), "box region needs at least one dimension");
  require(lower.size() == upper.size(),
          "box region corners must have the same dimension");
  require(all_finite(lower) && all_finite(upper),
          "box region corners must be finite");
  for (std::size_t j = 0; j < lower.size(); ++j)
    require(lower[j] < upper[j],
            "box region needs lower < upper in every coordinate");
  orientation = classify_box(lower, upper);
}

TvEstimate tv_distance_box(const ScalarField& density_f,
                           const ScalarField& density_g,
                           const ScalarField& cdf_f, const ScalarField& cdf_g,
                           const BoxRegion& box, const QuadratureSpec& spec) {
  require(spec.points_per_axis >= 2, "quadrature needs at least two points");

  const auto half_gap = [&](std::span<const double> x) {
    const double fv = density_f(x);
    const double gv = density_g(x);
    if (!std::isfinite(fv) || !std::isfinite(gv))
      throw NumericError("tv_distance_box: non-finite density at " +
                         format_point(x));
    return 0.5 * std::abs(fv - gv);
  };

  const double coarse =
      tensor_integrate(half_gap, box.lower, box.upper, spec.points_per_axis);
  const double fine = tensor_integrate(half_gap, box.lower, box.upper,
                                       2 * spec.points_per_axis);

  const double mass_f = checked_mass(cdf_f, box.lower, box.upper, "cdf_f");
  const double mass_g = checked_mass(cdf_g, box.lower, box.upper, "cdf_g");

  TvEstimate estimate;
  estimate.box_integral = fine;
  estimate.tail_bound = 0.5 * ((1.0 - mass_f) + (1.0 - mass_g));
  estimate.refinement_error = std::abs(fine - coarse);
  return estimate;
}

SupDistanceResult sup_distance_grid(const ScalarField& f1,
                                    const ScalarField& f2,
                                    const GridAxes& grid) {
  require(grid.dimension() >= 1, "sup distance needs a non-empty grid");
  require(grid.node_count() > 0, "sup distance needs a non-empty grid");

  SupDistanceResult result;
  result.value = -1.0;
  for_each_node(grid, [&](std::size_t, std::span<const double> point) {
    const double a = f1(point);
    const double b = f2(point);
    if (!std::isfinite(a) || !std::isfinite(b))
      throw NumericError("sup_distance_grid: non-finite value at " +
                         format_point(point));
    const double gap = std::abs(a - b);
    if (gap > result.value) {
      result.value = gap;
      result.argmax.assign(point.begin(), point.end());
    }
  });
  return result;
}

EmpiricalCopula::EmpiricalCopula(const SampleMatrix& sample)
    : k_(sample.rows()), d_(sample.cols()) {
  require(k_ >= 1, "empirical copula needs at least one row");
  normalized_ranks_.assign(static_cast<std::size_t>(k_) * d_, 0.0);

  std::vector<long> order(static_cast<std::size_t>(k_));
  for (int j = 0; j < d_; ++j) {
    std::iota(order.begin(), order.end(), 0L);
    // Stable: tied observations keep their input order, so ranks are a
    // permutation of 1..k even with duplicates.
    std::stable_sort(order.begin(), order.end(), [&](long a, long b) {
      return sample.at(a, j) < sample.at(b, j);
    });
    for (long r = 0; r < k_; ++r) {
      const long row = order[static_cast<std::size_t>(r)];
      normalized_ranks_[static_cast<std::size_t>(row) * d_ + j] =
          static_cast<double>(r + 1) / static_cast<double>(k_);
    }
  }
}

double EmpiricalCopula::eval(std::span<const double> u) const {
  require(static_cast<int>(u.size()) == d_,
          "empirical copula point has the wrong dimension");
  long count = 0;
  for (long i = 0; i < k_; ++i) {
    const std::size_t base = static_cast<std::size_t>(i) * d_;
    bool inside = true;
    for (int j = 0; j < d_; ++j) {
      if (normalized_ranks_[base + j] > u[j]) {
        inside = false;
        break;
      }
    }
    if (inside) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(k_);
}

double empirical_copula_eval(const EmpiricalCopula& ec,
                             std::span<const double> u) {
  return ec.eval(u);
}

SupErrorResult empirical_copula_sup_error(const EmpiricalCopula& ec,
                                          const Copula& reference,
                                          const GridAxes& grid) {
  require(ec.dimension() == reference.dimension(),
          "empirical copula and reference must share a dimension");
  require(grid.dimension() == ec.dimension(),
          "grid dimension must match the copulas");
  require(grid.node_count() > 0, "sup error needs a non-empty grid");

  SupErrorResult result;
  result.value = -1.0;
  for_each_node(grid, [&](std::size_t, std::span<const double> point) {
    const double gap = std::abs(ec.eval(point) - reference.cdf(point));
    if (gap > result.value) {
      result.value = gap;
      result.argmax.assign(point.begin(), point.end());
    }
  });
  result.discretization_allowance =
      1.0 / static_cast<double>(ec.sample_size());
  return result;
}

double rho_delta_thresholded(const ScalarField& density_p,
                             const ScalarField& density_m, double delta,
                             double threshold, const BoxRegion& domain,
                             const QuadratureSpec& spec) {
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
  require(std::isfinite(threshold) && threshold > 0.0,
          "threshold must be positive and finite");
  require(spec.points_per_axis >= 2, "quadrature needs at least two points");

  const auto integrand = [&](std::span<const double> x) {
    const double p = density_p(x);
    const double m = density_m(x);
    if (!std::isfinite(p) || !std::isfinite(m) || p < 0.0 || m < 0.0)
      throw NumericError("rho_delta: invalid density value at " +
                         format_point(x));
    if (p == 0.0) return 0.0;
    if (m <= 0.0)
      throw NumericError(
          "rho_delta: denominator density vanishes where the numerator is "
          "positive, at " +
          format_point(x));
    const double ratio = p / m;
    if (!(ratio > threshold)) return 0.0;
    return std::pow(ratio, delta) * p;
  };

  return tensor_integrate(integrand, domain.lower, domain.upper,
                          spec.points_per_axis);
}

double rho_delta(const ScalarField& density_p, const ScalarField& density_m,
                 double delta, const BoxRegion& domain,
                 const QuadratureSpec& spec) {
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
  return rho_delta_thresholded(density_p, density_m, delta,
                               std::exp(1.0 / delta), domain, spec);
}

MomentEstimate log_ratio_moments(int alpha, const ScalarField& density_num,
                                 const ScalarField& density_den,
                                 const CopulaSampler& numerator_sampler, long k,
                                 RandomSource& source) {
  require(alpha >= 1, "moment order must be at least one");
  require(k >= 2, "log-ratio moments need at least two draws");
  require(static_cast<bool>(numerator_sampler.draw),
          "sampler has no draw function");

  // Welford keeps the running mean and squared deviation stable even when
  // the log ratios are tiny and nearly constant.
  double mean = 0.0;
  double m2 = 0.0;
  for (long i = 0; i < k; ++i) {
    const std::vector<double> u = numerator_sampler.draw(source);
    const double num = density_num(u);
    const double den = density_den(u);
    if (!std::isfinite(num) || !std::isfinite(den) || num <= 0.0 || den <= 0.0)
      throw NumericError("log_ratio_moments: densities must be positive and "
                         "finite at sampled points, got num=" +
                         format_double(num) + " den=" + format_double(den) +
                         " at " + format_point(u));
    const double log_ratio = std::log(num) - std::log(den);
    const double y = std::pow(log_ratio, alpha);
    const double delta = y - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (y - mean);
  }

  MomentEstimate estimate;
  estimate.value = mean;
  estimate.standard_error =
      std::sqrt(m2 / static_cast<double>(k - 1) / static_cast<double>(k));
  estimate.sample_size = k;
  return estimate;
}

DensityGrid density_ratio_grid(const ScalarField& density_num,
                               const ScalarField& density_den,
                               const GridAxes& grid) {
  require(grid.dimension() >= 1, "density ratio needs a non-empty grid");
  require(grid.node_count() > 0, "density ratio needs a non-empty grid");

  DensityGrid result;
  result.grid = grid;
  result.values.assign(grid.node_count(), 0.0);

  double best = -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> argmax;
  std::vector<double> argmin;
  for_each_node(grid, [&](std::size_t flat, std::span<const double> point) {
    const double num = density_num(point);
    const double den = density_den(point);
    if (!std::isfinite(num) || !std::isfinite(den))
      throw NumericError("density_ratio_grid: non-finite density at " +
                         format_point(point));
    if (den <= 0.0)
      throw NumericError("density_ratio_grid: zero denominator at " +
                         format_point(point));
    const double ratio = num / den;
    result.values[flat] = ratio;
    if (ratio > best) {
      best = ratio;
      argmax.assign(point.begin(), point.end());
    }
    if (ratio < worst) {
      worst = ratio;
      argmin.assign(point.begin(), point.end());
    }
  });

  result.metadata["kind"] = "density ratio";
  result.metadata["max"] = format_double(best);
  result.metadata["min"] = format_double(worst);
  result.metadata["argmax"] = format_point(argmax);
  result.metadata["argmin"] = format_point(argmin);
  result.validate();
  return result;
}

}  // namespace maxstable
