#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "maxstable/copulas.hpp"
#include "maxstable/dnorm.hpp"
#include "maxstable/gev.hpp"
#include "maxstable/random.hpp"

namespace maxstable {

// Where a sample came from: enough to reproduce or label a run.
struct Provenance {
  std::string family;
  std::string parameters;
  long block_size = 0;  // n when rows are block maxima, else 0
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// k rows of d-dimensional draws, row-major.
class SampleMatrix {
 public:
  SampleMatrix(long k, int d);

  long rows() const { return k_; }
  int cols() const { return d_; }
  double at(long i, int j) const {
    return data_[static_cast<std::size_t>(i) * d_ + static_cast<std::size_t>(j)];
  }
  double& at(long i, int j) {
    return data_[static_cast<std::size_t>(i) * d_ + static_cast<std::size_t>(j)];
  }
  std::span<const double> row(long i) const {
    return {data_.data() + static_cast<std::size_t>(i) * d_,
            static_cast<std::size_t>(d_)};
  }
  std::vector<double> column(int j) const;

  Provenance provenance;

 private:
  long k_;
  std::size_t d_;
  std::vector<double> data_;
};

// One-draw copula sampler bundled with its label, so block-maxima and
// max-stable pipelines can be built over any base family.
struct CopulaSampler {
  std::string family;
  std::string parameters;
  int dimension = 0;
  std::function<std::vector<double>(RandomSource&)> draw;
};

// Exact Gumbel-Hougaard sampler: a positive stable mixing variable makes
// U_j = exp(-(E_j / S)^{1/p}) with E_j iid unit exponentials. p = 1 is
// plain independence.
CopulaSampler gumbel_hougaard_sampler(double p, int d);
CopulaSampler independence_sampler(int d);

// Conditional-distribution sampler for an arbitrary bivariate copula with
// first-order partials: u1 uniform, then u2 solves dC/du1(u1, u2) = v by
// bisection plus a Newton polish. Roots must land within 1e-10 on the
// residual scale or, where the conditional cdf is steep, within 1e-11 on
// the argument scale that the bisection bracket guarantees.
CopulaSampler conditional_2d_sampler(std::shared_ptr<const Copula> copula);

// Sampler of the extreme-value copula attached to a D-norm: logistic norms
// via the Gumbel-Hougaard construction, other differentiable families in
// d = 2 via conditional inversion.
CopulaSampler extreme_value_sampler(const DNorm& norm);

SampleMatrix sample_gumbel_hougaard(double p, int d, long k,
                                    RandomSource& source);

SampleMatrix sample_copula_conditional_2d(std::shared_ptr<const Copula> copula,
                                          long k, RandomSource& source);

struct BlockMaximaSample {
  SampleMatrix raw;       // componentwise maxima, in [0,1]^d
  SampleMatrix rescaled;  // n * (raw - 1), in (-n, 0]^d
};

// k componentwise maxima over blocks of n fresh base draws, with the
// rescaling used by the finite-n limit laws.
BlockMaximaSample sample_block_maxima(const CopulaSampler& base, long n, long k,
                                      RandomSource& source);

// Rows follow the standard max-stable law G(x) = exp(-||x||_D) on the
// negative orthant: eta_j = log V_j for V from the extreme-value copula.
SampleMatrix sample_max_stable(const DNorm& norm, long k,
                               RandomSource& source);

// Row-wise marginal transform of rescaled maxima: x_ij = F_j^{-1}(1 +
// eta_ij / n). Domain violations are reported with the offending row.
SampleMatrix transform_margins(const SampleMatrix& sample,
                               std::span<const Margin> margins, long n);

}  // namespace maxstable
