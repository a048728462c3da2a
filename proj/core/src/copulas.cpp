#include "maxstable/copulas.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "maxstable/common.hpp"

namespace maxstable {

namespace {

void check_cube(std::span<const double> u, int d) {
  require(static_cast<int>(u.size()) == d, "copula: dimension mismatch");
  if (!all_finite(u)) throw NumericError("copula: non-finite coordinate");
  for (double v : u)
    if (v < 0.0 || v > 1.0)
      throw DomainError("copula: point outside the unit cube");
}

void check_open_cube(std::span<const double> u, int d) {
  check_cube(u, d);
  for (double v : u)
    if (v <= 0.0 || v >= 1.0)
      throw DomainError("copula: partials need the open unit cube");
}

}  // namespace

GeneralizedParetoCopula::GeneralizedParetoCopula(DNorm norm)
    : norm_(std::move(norm)),
      u0_(static_cast<std::size_t>(norm_.dimension()),
          norm_.dimension() == 1 ? 0.0 : 0.5) {}

GeneralizedParetoCopula::GeneralizedParetoCopula(DNorm norm,
                                                 std::vector<double> u0)
    : norm_(std::move(norm)), u0_(std::move(u0)) {
  require(static_cast<int>(u0_.size()) == norm_.dimension(),
          "GPC: threshold dimension mismatch");
  for (double v : u0_) {
    require(v < 1.0, "GPC: threshold must lie below 1");
    require(v >= 0.0, "GPC: threshold must be nonnegative");
    if (norm_.dimension() > 1)
      require(v > 0.0, "GPC: threshold must be interior for d >= 2");
  }
}

std::string GeneralizedParetoCopula::name() const {
  return "generalized-pareto[" + norm_.name() + "]";
}

void GeneralizedParetoCopula::check_region(std::span<const double> u,
                                           bool strict_interior) const {
  check_cube(u, dimension());
  for (std::size_t i = 0; i < u0_.size(); ++i) {
    if (u[i] < u0_[i])
      throw DomainError("GPC: point below the exact-region threshold");
    if (strict_interior && u[i] >= 1.0)
      throw DomainError("GPC: partials need coordinates strictly below 1");
  }
}

double GeneralizedParetoCopula::cdf(std::span<const double> u) const {
  check_region(u, false);
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = u[i] - 1.0;
  return 1.0 - norm_.eval(x);
}

double GeneralizedParetoCopula::block_partial(const IndexBlock& block,
                                              std::span<const double> u) const {
  check_region(u, true);
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = u[i] - 1.0;
  return norm_.phi_block_partial(block, x);
}

ExtremeValueCopula::ExtremeValueCopula(DNorm norm) : norm_(std::move(norm)) {}

std::string ExtremeValueCopula::name() const {
  return "extreme-value[" + norm_.name() + "]";
}

double ExtremeValueCopula::cdf(std::span<const double> u) const {
  check_cube(u, dimension());
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0.0) return 0.0;
    x[i] = std::log(u[i]);
  }
  return std::exp(-norm_.eval(x));
}

double ExtremeValueCopula::block_partial(const IndexBlock& block,
                                         std::span<const double> u) const {
  check_open_cube(u, dimension());
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = std::log(u[i]);
  const double phi = -norm_.eval(x);

  // C = exp(phi(log u)); Faa di Bruno with every exp derivative equal to C
  // and inner block factors phi_B(log u) * prod_{j in B} 1/u_j from the
  // coordinate-wise log chain.
  OuterDerivatives outer{[](int, double y) { return std::exp(y); }};
  InnerBlockDerivatives inner{[&](const IndexBlock& b) {
    double v = norm_.phi_block_partial(b, x);
    for (int j : b.indices()) v /= u[static_cast<std::size_t>(j)];
    return v;
  }};
  return faa_di_bruno(outer, phi, inner, block);
}

std::string GumbelHougaardCopula::name() const {
  return "gumbel-hougaard(p=" + std::to_string(p_) + ")";
}

InclusionExclusionCopula::InclusionExclusionCopula(int d)
    : d_(d), norm_(DNorm::inclusion_exclusion(d)) {}

// C(u) = sum over subsets B of (-1)^{|B|} S_B(u), where S_B is the joint
// survival (sum_{j in B} 1/(1-u_j) - |B| + 1)^{-1} of the |B|-dimensional
// margin; |B| <= 1 contributes the grounded-plus-margins part 1 - d + sum u.
double InclusionExclusionCopula::cdf(std::span<const double> u) const {
  check_cube(u, d_);
  double total = 1.0 - d_;
  for (double v : u) total += v;
  const std::uint32_t full = (1u << d_) - 1u;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int sz = std::popcount(mask);
    if (sz < 2) continue;
    double recip = 0.0;
    for (int j = 0; j < d_; ++j)
      if (mask & (1u << j)) recip += 1.0 / (1.0 - u[static_cast<std::size_t>(j)]);
    const double vb = recip - (sz - 1);
    const double term = std::isinf(vb) ? 0.0 : 1.0 / vb;
    total += (sz % 2 == 0 ? term : -term);
  }
  return total;
}

double InclusionExclusionCopula::block_partial(const IndexBlock& block,
                                               std::span<const double> u) const {
  check_open_cube(u, d_);
  const int k = block.size();
  require(block.max_index() < d_, "copula: block index out of range");

  double kfact = 1.0;
  for (int i = 2; i <= k; ++i) kfact *= i;
  double chain = 1.0;  // prod over the block of d/du_m [1/(1-u_m)] = (1-u_m)^{-2}
  std::uint32_t block_mask = 0;
  for (int j : block.indices()) {
    const double s = 1.0 - u[static_cast<std::size_t>(j)];
    chain /= s * s;
    block_mask |= 1u << j;
  }

  double sum = (k == 1) ? 1.0 : 0.0;
  const std::uint32_t full = (1u << d_) - 1u;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int sz = std::popcount(mask);
    if (sz < 2 || (mask & block_mask) != block_mask) continue;
    double recip = 0.0;
    for (int j = 0; j < d_; ++j)
      if (mask & (1u << j)) recip += 1.0 / (1.0 - u[static_cast<std::size_t>(j)]);
    const double vb = recip - (sz - 1);
    // d^k/dv^k of v^{-1} brings (-1)^k k!, the subset sign is (-1)^{|B|}.
    const double sign = ((sz + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * kfact * std::pow(vb, -(k + 1)) * chain;
  }
  return sum;
}

double scaled_expansion_residual(const Copula& c, std::span<const double> w,
                                 double t) {
  require(t > 0.0 && t <= 1.0, "scaled_expansion_residual: t in (0,1]");
  require(static_cast<int>(w.size()) == c.dimension(),
          "scaled_expansion_residual: dimension mismatch");
  std::vector<double> u(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    require(w[i] >= 0.0, "scaled_expansion_residual: direction must be >= 0");
    u[i] = 1.0 - t * w[i];
    if (u[i] < 0.0) throw DomainError("scaled_expansion_residual: t too large");
  }
  return (c.cdf(u) - 1.0 + t * c.dnorm().eval(w)) / t;
}

std::vector<LimitCheckEntry> scaled_partial_limit_check(
    const Copula& c, const IndexBlock& block, std::span<const double> x,
    std::span<const int> n_schedule) {
  const int k = block.size();
  const double target = c.dnorm().phi_block_partial(block, x);
  std::vector<LimitCheckEntry> out;
  out.reserve(n_schedule.size());
  for (int n : n_schedule) {
    require(n >= 1, "scaled_partial_limit_check: n >= 1");
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = 1.0 + x[i] / n;
    const double value =
        std::pow(static_cast<double>(n), 1 - k) * c.block_partial(block, u);
    out.push_back({n, value, target});
  }
  return out;
}

}  // namespace maxstable
