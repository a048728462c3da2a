#pragma once

#include <span>
#include <string>

#include "maxstable/partitions.hpp"

namespace maxstable {

enum class DNormFamily { logistic, sup, inclusion_exclusion };

// Norm generated by a max-stable generator vector: homogeneous, monotone on
// the positive orthant, and sandwiched between the sup-norm and the 1-norm
// with ||e_j|| = 1. Three concrete families:
//
//   logistic(p)            (sum |x_i|^p)^(1/p), p >= 1
//   sup                    max |x_i| (no usable mixed partials)
//   inclusion_exclusion    sum |x_i| + sum_{i=2..d} (-1)^{i+1}
//                            sum_{|B|=i} (sum_{j in B} 1/|x_j|)^{-1}
//
// Mixed block partials are exposed on the strict interior of the negative
// orthant, which is where the max-stable density machinery needs them.
class DNorm {
public:
  static DNorm logistic(int d, double p);
  static DNorm sup(int d);
  static DNorm inclusion_exclusion(int d);

  int dimension() const { return d_; }
  DNormFamily family() const { return family_; }
  double p() const;  // logistic exponent; throws for other families
  std::string name() const;

  // True when mixed partials up to order d exist on the open negative
  // orthant. The sup-norm is the one family here without them.
  bool has_order_d_partials() const { return family_ != DNormFamily::sup; }

  double eval(std::span<const double> x) const;

  // d^k ||x|| / dx_{i_1} ... dx_{i_k} over the distinct indices of `block`,
  // x strictly negative componentwise.
  double block_partial(const IndexBlock& block,
                       std::span<const double> x) const;

  // Same derivative for phi(x) = -||x||, the exponent of the max-stable law.
  double phi_block_partial(const IndexBlock& block,
                           std::span<const double> x) const {
    return -block_partial(block, x);
  }

private:
  DNorm(DNormFamily f, int d, double p) : family_(f), d_(d), p_(p) {}
  void check_point(std::span<const double> x, bool strict_negative) const;

  DNormFamily family_;
  int d_;
  double p_;
};

}  // namespace maxstable
