#include "maxstable/maxima.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxstable/common.hpp"
#include "maxstable/quadrature.hpp"

namespace maxstable {

namespace {

// Rounding in the partition sums can push an exact zero density slightly
// negative; anything beyond this is a real sign defect.
constexpr double kDensityZeroTolerance = 1e-12;

double clamp_density(double v, const char* what) {
  if (v >= 0.0) return v;
  if (v > -kDensityZeroTolerance) return 0.0;
  throw NumericError(std::string(what) + ": negative density " +
                     format_double(v));
}

double falling_factorial(long n, int m) {
  double f = 1.0;
  for (int i = 0; i < m; ++i) f *= static_cast<double>(n - i);
  return f;
}

}  // namespace

double sigma_n_derivative(int m, double y, long n) {
  require(m >= 1, "sigma_n_derivative: order >= 1");
  require(n >= 1, "sigma_n_derivative: n >= 1");
  const double base = 1.0 + y / static_cast<double>(n);
  require(base > 0.0, "sigma_n_derivative: 1 + y/n must be positive");
  // sigma_n(y) = n log(1 + y/n); the m-th derivative is
  // (-1)^{m+1} (m-1)! n^{1-m} (1 + y/n)^{-m}.
  double f = 1.0;
  for (int i = 1; i < m; ++i) f *= static_cast<double>(i);
  const double sign = (m % 2 == 1) ? 1.0 : -1.0;
  return sign * f * std::pow(static_cast<double>(n), 1.0 - m) *
         std::pow(base, -static_cast<double>(m));
}

GpcMaximaLaw::GpcMaximaLaw(DNorm norm, long n)
    : norm_(norm), n_(n), copula_(norm) {
  require(n >= 1, "GpcMaximaLaw: n >= 1");
}

GpcMaximaLaw::GpcMaximaLaw(DNorm norm, long n, std::vector<double> u0)
    : norm_(norm), n_(n), copula_(norm, std::move(u0)) {
  require(n >= 1, "GpcMaximaLaw: n >= 1");
}

void GpcMaximaLaw::check_region(std::span<const double> x,
                                bool strict_interior) const {
  require(static_cast<int>(x.size()) == dimension(),
          "GpcMaximaLaw: dimension mismatch");
  const double dn = static_cast<double>(n_);
  const auto& u0 = copula_.u0();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] <= 0.0))
      throw DomainError("GpcMaximaLaw: coordinates must be <= 0");
    const double uj = 1.0 + x[j] / dn;
    // A hair of slack keeps boundary grid nodes usable after rounding.
    if (strict_interior) {
      if (!(uj > u0[j]) || !(x[j] < 0.0))
        throw DomainError(
            "GpcMaximaLaw: density needs the open rescaled region");
    } else if (!(uj >= u0[j] - 1e-12)) {
      throw DomainError("GpcMaximaLaw: point below the rescaled threshold");
    }
  }
}

double GpcMaximaLaw::cdf(std::span<const double> x) const {
  check_region(x, false);
  const double b = 1.0 - norm_.eval(x) / static_cast<double>(n_);
  if (b <= 0.0) return 0.0;
  return std::pow(b, static_cast<double>(n_));
}

double GpcMaximaLaw::density(std::span<const double> x) const {
  check_region(x, true);
  const double phi = -norm_.eval(x);
  if (1.0 + phi / static_cast<double>(n_) <= 0.0) return 0.0;
  const IndexBlock full = IndexBlock::full(dimension());
  // H_n = exp(psi) with psi = sigma_n(phi); the inner partials of psi are
  // themselves compositions, so each block runs its own partition sum.
  const double psi =
      static_cast<double>(n_) * std::log1p(phi / static_cast<double>(n_));
  OuterDerivatives exp_outer{
      [](int, double y) { return std::exp(y); }};
  OuterDerivatives sigma_outer{[this, phi](int m, double) {
    return sigma_n_derivative(m, phi, n_);
  }};
  InnerBlockDerivatives phi_inner{[this, &x](const IndexBlock& b) {
    return norm_.phi_block_partial(b, x);
  }};
  InnerBlockDerivatives psi_inner{
      [&sigma_outer, &phi_inner, phi](const IndexBlock& b) {
        return faa_di_bruno(sigma_outer, phi, phi_inner, b);
      }};
  const double v = faa_di_bruno(exp_outer, psi, psi_inner, full);
  return clamp_density(v, "GpcMaximaLaw");
}

StandardMaxStable::StandardMaxStable(DNorm norm) : norm_(norm) {}

double StandardMaxStable::cdf(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == dimension(),
          "StandardMaxStable: dimension mismatch");
  std::vector<double> y(x.begin(), x.end());
  for (double& v : y) v = std::min(v, 0.0);
  return std::exp(-norm_.eval(y));
}

double StandardMaxStable::density(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == dimension(),
          "StandardMaxStable: dimension mismatch");
  for (double v : x)
    if (!(v < 0.0))
      throw DomainError("StandardMaxStable: density needs x < 0");
  if (!norm_.has_order_d_partials())
    throw UnsupportedFamilyError(
        "StandardMaxStable: no density for the sup-norm family");
  const double phi = -norm_.eval(x);
  OuterDerivatives exp_outer{
      [](int, double y) { return std::exp(y); }};
  InnerBlockDerivatives phi_inner{[this, &x](const IndexBlock& b) {
    return norm_.phi_block_partial(b, x);
  }};
  const double v =
      faa_di_bruno(exp_outer, phi, phi_inner, IndexBlock::full(dimension()));
  return clamp_density(v, "StandardMaxStable");
}

double StandardMaxStable::epsilon_box(double eps) const {
  require(eps > 0.0 && eps < 1.0, "epsilon_box: eps in (0,1)");
  const int d = dimension();
  const std::vector<double> upper(static_cast<std::size_t>(d), 0.0);
  auto mass = [&](double t) {
    const std::vector<double> lower(static_cast<std::size_t>(d), t);
    return rectangle_mass([this](std::span<const double> c) { return cdf(c); },
                          lower, upper);
  };
  const double want = 1.0 - eps;
  double lo = -1.0;  // will satisfy mass(lo) >= want
  double hi = 0.0;   // degenerate box, mass 0 < want
  while (mass(lo) < want) {
    hi = lo;
    lo *= 2.0;
    if (lo < -1e9) throw NumericError("epsilon_box: no bracketing box found");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-9 * std::max(1.0, -lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) >= want ? lo : hi) = mid;
  }
  return lo;
}

MaximaCopula::MaximaCopula(std::shared_ptr<const Copula> base, long n)
    : base_(std::move(base)), n_(n) {
  require(base_ != nullptr, "MaximaCopula: base copula required");
  require(n >= 1, "MaximaCopula: n >= 1");
}

std::string MaximaCopula::name() const {
  return "maxima(" + base_->name() + ", n=" + std::to_string(n_) + ")";
}

double MaximaCopula::cdf(std::span<const double> u) const {
  require(static_cast<int>(u.size()) == dimension(),
          "MaximaCopula: dimension mismatch");
  const double inv = 1.0 / static_cast<double>(n_);
  std::vector<double> v(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (!(u[j] >= 0.0 && u[j] <= 1.0))
      throw DomainError("MaximaCopula: point outside the unit cube");
    v[j] = std::pow(u[j], inv);
  }
  return std::pow(base_->cdf(v), static_cast<double>(n_));
}

double MaximaCopula::block_partial(const IndexBlock& block,
                                   std::span<const double> u) const {
  const int d = dimension();
  require(static_cast<int>(u.size()) == d, "MaximaCopula: dimension mismatch");
  require(block.max_index() < d, "MaximaCopula: block index out of range");
  const double inv = 1.0 / static_cast<double>(n_);
  std::vector<double> v(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (!(u[j] >= 0.0 && u[j] <= 1.0))
      throw DomainError("MaximaCopula: point outside the unit cube");
    v[j] = std::pow(u[j], inv);
  }
  for (int j : block.indices())
    if (u[static_cast<std::size_t>(j)] <= 0.0)
      throw DomainError("MaximaCopula: partials need u_j > 0 on the block");
  const double y = base_->cdf(v);
  OuterDerivatives power_outer{[this](int m, double w) {
    const double f = falling_factorial(n_, m);
    if (f == 0.0) return 0.0;  // order beyond n
    return f * std::pow(w, static_cast<double>(n_ - m));
  }};
  InnerBlockDerivatives inner{[&](const IndexBlock& b) {
    double chain = base_->block_partial(b, v);
    for (int j : b.indices()) {
      const double uj = u[static_cast<std::size_t>(j)];
      chain *= inv * std::pow(uj, inv - 1.0);
    }
    return chain;
  }};
  const double out = faa_di_bruno(power_outer, y, inner, block);
  if (block.size() == d) return clamp_density(out, "MaximaCopula");
  return out;
}

double maxima_copula_log_form(const Copula& base, long n,
                              std::span<const double> u) {
  require(n >= 1, "maxima_copula_log_form: n >= 1");
  require(static_cast<int>(u.size()) == base.dimension(),
          "maxima_copula_log_form: dimension mismatch");
  std::vector<double> w(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (!(u[j] > 0.0 && u[j] <= 1.0))
      throw DomainError("maxima_copula_log_form: u must lie in (0,1]");
    w[j] = 1.0 + std::log(u[j]) / static_cast<double>(n);
  }
  return std::pow(base.cdf(w), static_cast<double>(n));
}

NormalizedMaximaLaw::NormalizedMaximaLaw(DNorm norm,
                                         std::vector<Margin> margins, long n)
    : limit_(norm), margins_(std::move(margins)), n_(n) {
  require(static_cast<int>(margins_.size()) == norm.dimension(),
          "NormalizedMaximaLaw: one margin per coordinate");
  require(n >= 1, "NormalizedMaximaLaw: n >= 1");
  norming_.reserve(margins_.size());
  for (const Margin& m : margins_)
    norming_.push_back(default_norming_constants(m, n));
}

NormalizedMaximaLaw::NormalizedMaximaLaw(DNorm norm,
                                         std::vector<Margin> margins, long n,
                                         std::vector<NormingConstants> norming)
    : limit_(norm), margins_(std::move(margins)), n_(n),
      norming_(std::move(norming)) {
  require(static_cast<int>(margins_.size()) == norm.dimension(),
          "NormalizedMaximaLaw: one margin per coordinate");
  require(norming_.size() == margins_.size(),
          "NormalizedMaximaLaw: one norming pair per coordinate");
  require(n >= 1, "NormalizedMaximaLaw: n >= 1");
  for (const NormingConstants& c : norming_)
    require(c.a > 0.0, "NormalizedMaximaLaw: scale constants must be > 0");
}

std::vector<double> NormalizedMaximaLaw::transformed(
    std::span<const double> x) const {
  require(x.size() == margins_.size(),
          "NormalizedMaximaLaw: dimension mismatch");
  const double dn = static_cast<double>(n_);
  std::vector<double> u(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double arg = norming_[j].a * x[j] + norming_[j].b;
    u[j] = -dn * (1.0 - margins_[j].cdf(arg));
  }
  return u;
}

double NormalizedMaximaLaw::cdf(std::span<const double> x) const {
  return limit_.cdf(transformed(x));
}

double NormalizedMaximaLaw::density(std::span<const double> x) const {
  const std::vector<double> u = transformed(x);
  const double dn = static_cast<double>(n_);
  double jac = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double arg = norming_[j].a * x[j] + norming_[j].b;
    const double fj = margins_[j].pdf(arg);
    if (fj == 0.0) return 0.0;
    jac *= dn * norming_[j].a * fj;
  }
  for (double uj : u)
    if (uj == 0.0)
      throw DomainError(
          "NormalizedMaximaLaw: density undefined at a marginal endpoint");
  return limit_.density(u) * jac;
}

double NormalizedMaximaLaw::limit_cdf(std::span<const double> x) const {
  require(x.size() == margins_.size(),
          "NormalizedMaximaLaw: dimension mismatch");
  std::vector<double> u(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    u[j] = margins_[j].limit_log_cdf(x[j]);
    if (std::isinf(u[j])) return 0.0;
  }
  return limit_.cdf(u);
}

double NormalizedMaximaLaw::limit_density(std::span<const double> x) const {
  require(x.size() == margins_.size(),
          "NormalizedMaximaLaw: dimension mismatch");
  std::vector<double> u(x.size());
  double jac = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double dj = margins_[j].limit_log_cdf_derivative(x[j]);
    if (dj == 0.0) return 0.0;
    jac *= dj;
    u[j] = margins_[j].limit_log_cdf(x[j]);
    if (!(u[j] < 0.0))
      throw DomainError(
          "NormalizedMaximaLaw: limit density undefined at an endpoint");
  }
  return limit_.density(u) * jac;
}

}  // namespace maxstable
