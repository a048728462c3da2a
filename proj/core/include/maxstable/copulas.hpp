#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "maxstable/dnorm.hpp"
#include "maxstable/partitions.hpp"

namespace maxstable {

// Copula family with enough analytic structure for the maxima machinery:
// cdf plus exact mixed block partials on the open unit cube, and the D-norm
// governing its upper-tail expansion C(u) = 1 - ||1-u||_D + o(||1-u||).
class Copula {
 public:
  virtual ~Copula() = default;

  virtual int dimension() const = 0;
  virtual std::string name() const = 0;
  virtual double cdf(std::span<const double> u) const = 0;

  // d^k C / du_{i_1} ... du_{i_k} over the distinct indices of `block`,
  // u strictly inside the family's differentiability region.
  virtual double block_partial(const IndexBlock& block,
                               std::span<const double> u) const = 0;

  // D-norm of the copula's extreme-value attractor.
  virtual const DNorm& dnorm() const = 0;

  // Full mixed partial d^d C / du_1 ... du_d.
  double density(std::span<const double> u) const {
    return block_partial(IndexBlock::full(dimension()), u);
  }
};

// Generalized Pareto copula: C(u) = 1 - ||1-u||_D on [u0, 1]. Queries below
// u0 are outside the model and throw. For d = 1 the identity copula is the
// exact GPC everywhere, so u0 defaults to 0 there; for d >= 2 the default
// threshold is (1/2, ..., 1/2).
class GeneralizedParetoCopula final : public Copula {
 public:
  explicit GeneralizedParetoCopula(DNorm norm);
  GeneralizedParetoCopula(DNorm norm, std::vector<double> u0);

  int dimension() const override { return norm_.dimension(); }
  std::string name() const override;
  double cdf(std::span<const double> u) const override;
  double block_partial(const IndexBlock& block,
                       std::span<const double> u) const override;
  const DNorm& dnorm() const override { return norm_; }
  const std::vector<double>& u0() const { return u0_; }

 private:
  void check_region(std::span<const double> u, bool strict_interior) const;
  DNorm norm_;
  std::vector<double> u0_;
};

// Extreme-value copula C(u) = exp(-|| (log u_1, ..., log u_d) ||_D).
// Max-stable: C^t(u^{1/t}) = C(u) for every t > 0.
class ExtremeValueCopula : public Copula {
 public:
  explicit ExtremeValueCopula(DNorm norm);

  int dimension() const override { return norm_.dimension(); }
  std::string name() const override;
  double cdf(std::span<const double> u) const override;
  double block_partial(const IndexBlock& block,
                       std::span<const double> u) const override;
  const DNorm& dnorm() const override { return norm_; }

 private:
  DNorm norm_;
};

// Gumbel-Hougaard family: the extreme-value copula of the logistic norm,
//   C_p(u) = exp(-(sum (-log u_i)^p)^{1/p}),  p >= 1,
// with p = 1 the independence copula. Fixed point of the copula-of-maxima
// map.
class GumbelHougaardCopula final : public ExtremeValueCopula {
 public:
  GumbelHougaardCopula(int d, double p)
      : ExtremeValueCopula(DNorm::logistic(d, p)), p_(p) {}
  double p() const { return p_; }
  std::string name() const override;

 private:
  double p_;
};

// Copula with harmonic-mean corrections,
//   C(u) = 1 - d + sum u_i
//          + sum_{i=2..d} (-1)^i
//            sum_{|B|=i} (sum_{j in B} 1/(1-u_j) - (|B| - 1))^{-1},
// the survival copula of a multivariate exponential law; attracted to the
// extreme-value copula of the inclusion-exclusion D-norm.
class InclusionExclusionCopula final : public Copula {
 public:
  explicit InclusionExclusionCopula(int d);

  int dimension() const override { return d_; }
  std::string name() const override { return "inclusion-exclusion"; }
  double cdf(std::span<const double> u) const override;
  double block_partial(const IndexBlock& block,
                       std::span<const double> u) const override;
  const DNorm& dnorm() const override { return norm_; }

 private:
  int d_;
  DNorm norm_;
};

// Residual of the upper-tail expansion at scale t:
//   [C(1 - t*w) - 1 + t*||w||_D] / t,  w >= 0, 1 - t*w in the copula domain.
// Tends to 0 as t -> 0 exactly when C lies in the delta-neighborhood of its
// GPC; identically 0 for the GPC itself.
double scaled_expansion_residual(const Copula& c, std::span<const double> w,
                                 double t);

struct LimitCheckEntry {
  int n;
  double value;   // n^{1-k} d^B C(1 + x/n)
  double target;  // d^B phi(x) = -d^B ||x||_D
};

// Differentiated neighborhood diagnostic: n * d^B_x [C(1 + x/n)] against the
// D-norm partial, tabulated along an n schedule. x strictly negative.
std::vector<LimitCheckEntry> scaled_partial_limit_check(
    const Copula& c, const IndexBlock& block, std::span<const double> x,
    std::span<const int> n_schedule);

}  // namespace maxstable
