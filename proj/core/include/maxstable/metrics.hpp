#pragma once

#include <functional>
#include <span>
#include <vector>

#include "maxstable/copulas.hpp"
#include "maxstable/grid.hpp"
#include "maxstable/quadrature.hpp"
#include "maxstable/sampling.hpp"

namespace maxstable {

using ScalarField = std::function<double(std::span<const double>)>;

enum class BoxOrientation { negative_orthant, unit_cube };

// Axis-aligned box sitting either in the negative orthant or in the unit
// cube, the two regions the convergence functionals integrate over.
struct BoxRegion {
  BoxRegion(std::vector<double> lower_corner, std::vector<double> upper_corner);

  int dimension() const { return static_cast<int>(lower.size()); }

  std::vector<double> lower;
  std::vector<double> upper;
  BoxOrientation orientation;
};

// Total-variation estimate split the way the convergence proofs split it:
// the |f - g| integral over a box plus a bound on the mass both laws leave
// outside, with a quadrature refinement error. The honest statement is the
// bracket, never a point value.
struct TvEstimate {
  double box_integral;      // (1/2) int_box |f - g|
  double tail_bound;        // (1/2) (mass of f outside + mass of g outside)
  double refinement_error;  // |coarse - fine| half-integral difference

  double lower() const { return box_integral - refinement_error; }
  double upper() const { return box_integral + tail_bound + refinement_error; }
};

TvEstimate tv_distance_box(const ScalarField& density_f,
                           const ScalarField& density_g, const ScalarField& cdf_f,
                           const ScalarField& cdf_g, const BoxRegion& box,
                           const QuadratureSpec& spec);

struct SupDistanceResult {
  double value = 0.0;
  std::vector<double> argmax;
};

// Exact maximum of |F1 - F2| over the grid nodes, with the attaining node.
SupDistanceResult sup_distance_grid(const ScalarField& f1, const ScalarField& f2,
                                    const GridAxes& grid);

// Rank-based copula estimate. Ranks are per column, ties broken by input
// order (stable), and normalized by the sample size.
class EmpiricalCopula {
 public:
  explicit EmpiricalCopula(const SampleMatrix& sample);

  long sample_size() const { return k_; }
  int dimension() const { return d_; }
  double eval(std::span<const double> u) const;

 private:
  long k_;
  int d_;
  std::vector<double> normalized_ranks_;  // row-major, rank / k
};

double empirical_copula_eval(const EmpiricalCopula& ec,
                             std::span<const double> u);

struct SupErrorResult {
  double value = 0.0;
  std::vector<double> argmax;
  // Rank-grid resolution 1/k: the empirical copula only moves in steps of
  // this size, so grid sups carry it as a discretization allowance.
  double discretization_allowance = 0.0;
};

SupErrorResult empirical_copula_sup_error(const EmpiricalCopula& ec,
                                          const Copula& reference,
                                          const GridAxes& grid);

// int over {p/m > threshold} of (p/m)^delta p, the clustering functional
// with an explicit threshold. The indicator is applied nodewise.
double rho_delta_thresholded(const ScalarField& density_p,
                             const ScalarField& density_m, double delta,
                             double threshold, const BoxRegion& domain,
                             const QuadratureSpec& spec);

// Standard threshold exp(1/delta), delta in (0, 1].
double rho_delta(const ScalarField& density_p, const ScalarField& density_m,
                 double delta, const BoxRegion& domain,
                 const QuadratureSpec& spec);

struct MomentEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  long sample_size = 0;
};

// Monte Carlo estimate of E[log^alpha(num/den)] under the numerator law,
// drawn from the supplied sampler.
MomentEstimate log_ratio_moments(int alpha, const ScalarField& density_num,
                                 const ScalarField& density_den,
                                 const CopulaSampler& numerator_sampler, long k,
                                 RandomSource& source);

// Nodewise num/den ratio with max, min and their locations in the metadata.
DensityGrid density_ratio_grid(const ScalarField& density_num,
                               const ScalarField& density_den,
                               const GridAxes& grid);

}  // namespace maxstable
