#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "maxstable/copulas.hpp"
#include "maxstable/dnorm.hpp"
#include "maxstable/gev.hpp"

namespace maxstable {

// m-th derivative of sigma_n(y) = n log(1 + y/n), the exponent map that
// turns a finite-n power (1 + y/n)^n into exp(sigma_n(y)). Requires
// 1 + y/n > 0.
double sigma_n_derivative(int m, double y, long n);

// Law of the rescaled componentwise maximum n(M - 1) of n independent
// samples from a generalized Pareto copula: on its support the cdf is the
// exact power
//   H_n(x) = (1 - ||x||_D / n)_+^n,  x <= 0, 1 + x/n above the GPC
//   threshold,
// and the density is obtained by differentiating exp(n log(1 - ||x||/n))
// through the partition calculus.
class GpcMaximaLaw {
 public:
  GpcMaximaLaw(DNorm norm, long n);
  GpcMaximaLaw(DNorm norm, long n, std::vector<double> u0);

  int dimension() const { return norm_.dimension(); }
  long n() const { return n_; }
  const DNorm& dnorm() const { return norm_; }
  const std::vector<double>& u0() const { return copula_.u0(); }

  double cdf(std::span<const double> x) const;
  double density(std::span<const double> x) const;

 private:
  void check_region(std::span<const double> x, bool strict_interior) const;
  DNorm norm_;
  long n_;
  GeneralizedParetoCopula copula_;
};

// Standard max-stable law with unit exponential margins on the negative
// orthant: G(x) = exp(-||x||_D) for x <= 0 (coordinates above 0 are clamped,
// the law puts no mass there). Densities need mixed norm partials, so the
// sup-norm family is rejected.
class StandardMaxStable {
 public:
  explicit StandardMaxStable(DNorm norm);

  int dimension() const { return norm_.dimension(); }
  const DNorm& dnorm() const { return norm_; }

  double cdf(std::span<const double> x) const;

  // Full mixed partial of G, x strictly negative.
  double density(std::span<const double> x) const;

  // Most negative diagonal coordinate t such that the box [t, 0]^d carries
  // G-mass at least 1 - eps; found by bisection on the exact
  // inclusion-exclusion mass.
  double epsilon_box(double eps = 1e-3) const;

 private:
  DNorm norm_;
};

// Copula of the componentwise maximum of n independent samples from a base
// copula: C_n(u) = C(u^{1/n})^n. Extreme-value copulas are fixed points of
// this map; for a base in the delta-neighborhood of its GPC the sequence
// converges to the extreme-value copula of the base's D-norm.
class MaximaCopula final : public Copula {
 public:
  MaximaCopula(std::shared_ptr<const Copula> base, long n);

  int dimension() const override { return base_->dimension(); }
  std::string name() const override;
  double cdf(std::span<const double> u) const override;
  double block_partial(const IndexBlock& block,
                       std::span<const double> u) const override;
  const DNorm& dnorm() const override { return base_->dnorm(); }
  long n() const { return n_; }

 private:
  std::shared_ptr<const Copula> base_;
  long n_;
};

// First-order variant of the maxima map: C^n(1 + log(u)/n), replacing the
// exact root u^{1/n} by its leading expansion. Converges to the same
// extreme-value limit, one order slower. Requires u in (0, 1]^d with
// 1 + log(u_j)/n inside the base cdf's domain.
double maxima_copula_log_form(const Copula& base, long n,
                              std::span<const double> u);

// Distribution of the affinely normalized componentwise maximum
// (M_n - b_n)/a_n of n iid vectors whose copula has extreme-value attractor
// G and whose j-th margin is F_j:
//   Q_n(x) = G(u_n(x)),  u_n_j(x_j) = -n (1 - F_j(a_n_j x_j + b_n_j)),
// together with the n -> infinity limit G(u(x)) built from each margin's
// limiting log-cdf under its default norming.
class NormalizedMaximaLaw {
 public:
  NormalizedMaximaLaw(DNorm norm, std::vector<Margin> margins, long n);
  NormalizedMaximaLaw(DNorm norm, std::vector<Margin> margins, long n,
                      std::vector<NormingConstants> norming);

  int dimension() const { return limit_.dimension(); }
  long n() const { return n_; }
  const DNorm& dnorm() const { return limit_.dnorm(); }
  const std::vector<Margin>& margins() const { return margins_; }
  const std::vector<NormingConstants>& norming() const { return norming_; }

  double cdf(std::span<const double> x) const;
  double density(std::span<const double> x) const;

  // The limit law and its density at the same point, for convergence runs.
  double limit_cdf(std::span<const double> x) const;
  double limit_density(std::span<const double> x) const;

 private:
  std::vector<double> transformed(std::span<const double> x) const;
  StandardMaxStable limit_;
  std::vector<Margin> margins_;
  long n_;
  std::vector<NormingConstants> norming_;
};

}  // namespace maxstable
