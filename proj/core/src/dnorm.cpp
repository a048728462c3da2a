#include "maxstable/dnorm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace maxstable {

DNorm DNorm::logistic(int d, double p) {
  require(d >= 1, "DNorm::logistic: dimension must be >= 1");
  if (d > kDefaultMaxDimension)
    throw DimensionLimitError("DNorm::logistic: dimension exceeds cap");
  require(p >= 1.0 && std::isfinite(p), "DNorm::logistic: requires p >= 1");
  return DNorm(DNormFamily::logistic, d, p);
}

DNorm DNorm::sup(int d) {
  require(d >= 1, "DNorm::sup: dimension must be >= 1");
  if (d > kDefaultMaxDimension)
    throw DimensionLimitError("DNorm::sup: dimension exceeds cap");
  return DNorm(DNormFamily::sup, d, 0.0);
}

DNorm DNorm::inclusion_exclusion(int d) {
  require(d >= 2, "DNorm::inclusion_exclusion: requires d >= 2");
  if (d > kDefaultMaxDimension)
    throw DimensionLimitError("DNorm::inclusion_exclusion: dimension exceeds cap");
  return DNorm(DNormFamily::inclusion_exclusion, d, 0.0);
}

double DNorm::p() const {
  if (family_ != DNormFamily::logistic)
    throw UnsupportedFamilyError("DNorm::p: not a logistic norm");
  return p_;
}

std::string DNorm::name() const {
  switch (family_) {
    case DNormFamily::logistic:
      return "logistic(p=" + std::to_string(p_) + ")";
    case DNormFamily::sup:
      return "sup";
    case DNormFamily::inclusion_exclusion:
      return "inclusion-exclusion";
  }
  return "?";
}

void DNorm::check_point(std::span<const double> x,
                        bool strict_negative) const {
  require(static_cast<int>(x.size()) == d_, "DNorm: dimension mismatch");
  if (!all_finite(x)) throw NumericError("DNorm: non-finite coordinate");
  if (strict_negative)
    for (double v : x)
      require(v < 0.0,
              "DNorm: block partials need the open negative orthant");
}

double DNorm::eval(std::span<const double> x) const {
  check_point(x, false);
  switch (family_) {
    case DNormFamily::sup: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::fabs(v));
      return m;
    }
    case DNormFamily::logistic: {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::fabs(v));
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (double v : x) s += std::pow(std::fabs(v) / m, p_);
      return m * std::pow(s, 1.0 / p_);
    }
    case DNormFamily::inclusion_exclusion: {
      double total = 0.0;
      for (double v : x) total += std::fabs(v);
      // Correction terms over all B with |B| >= 2; harmonic-style means
      // vanish whenever B touches a zero coordinate (1/|0| = inf).
      const unsigned full = 1u << d_;
      for (unsigned mask = 1; mask < full; ++mask) {
        int bits = std::popcount(mask);
        if (bits < 2) continue;
        double recip = 0.0;
        for (int j = 0; j < d_; ++j)
          if (mask & (1u << j)) recip += 1.0 / std::fabs(x[static_cast<std::size_t>(j)]);
        double term = std::isinf(recip) ? 0.0 : 1.0 / recip;
        total += (bits % 2 == 0 ? -1.0 : 1.0) * term;
      }
      return total;
    }
  }
  return 0.0;
}

double DNorm::block_partial(const IndexBlock& block,
                            std::span<const double> x) const {
  check_point(x, true);
  require(block.max_index() < d_, "DNorm::block_partial: index out of range");
  const int k = block.size();
  switch (family_) {
    case DNormFamily::sup:
      throw UnsupportedFamilyError(
          "DNorm::block_partial: sup-norm is not differentiable");
    case DNormFamily::logistic: {
      // d^k (sum |x|^p)^{1/p} = prod_{j=1}^{k-1}(1-jp) ||x||^{1-kp}
      //                         prod_{i in B} |x_i|^p / x_i
      double coef = 1.0;
      for (int j = 1; j < k; ++j) coef *= 1.0 - static_cast<double>(j) * p_;
      if (coef == 0.0) return 0.0;  // p = 1, k >= 2
      double norm = eval(x);
      double value = coef * std::pow(norm, 1.0 - static_cast<double>(k) * p_);
      for (int i : block.indices()) {
        double xi = x[static_cast<std::size_t>(i)];
        value *= std::pow(std::fabs(xi), p_) / xi;
      }
      return value;
    }
    case DNormFamily::inclusion_exclusion: {
      // Differentiating each correction (sum_{l in B} 1/|x_l|)^{-1} over the
      // block I requires I subset of B and gives
      //   (-1)^k k! u_B^{-(k+1)} prod_{i in I} 1/x_i^2,  u_B = sum 1/|x_l|.
      double kfact = 1.0;
      for (int j = 2; j <= k; ++j) kfact *= static_cast<double>(j);
      double prod = 1.0;
      for (int i : block.indices()) {
        double xi = x[static_cast<std::size_t>(i)];
        prod *= -1.0 / (xi * xi);  // (1/x^2) * sign(x), x < 0
      }
      unsigned block_mask = 0;
      for (int i : block.indices()) block_mask |= 1u << i;
      double sum = 0.0;
      const unsigned full = 1u << d_;
      for (unsigned mask = 0; mask < full; ++mask) {
        if ((mask & block_mask) != block_mask) continue;
        int bits = std::popcount(mask);
        if (bits < 2) continue;
        double u = 0.0;
        for (int j = 0; j < d_; ++j)
          if (mask & (1u << j))
            u += 1.0 / std::fabs(x[static_cast<std::size_t>(j)]);
        double sign = (bits % 2 == 0) ? -1.0 : 1.0;  // (-1)^{|B|+1}
        sum += sign * kfact * std::pow(u, -static_cast<double>(k + 1)) * prod;
      }
      if (k == 1) {
        double xi = x[static_cast<std::size_t>(block[0])];
        sum += std::fabs(xi) / xi;  // derivative of sum |x_i|
      }
      return sum;
    }
  }
  return 0.0;
}

}  // namespace maxstable
