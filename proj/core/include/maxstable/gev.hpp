#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace maxstable {

// Generalized extreme value df G*_gamma(x) = exp(-(1 + gamma*x)_+^{-1/gamma}),
// with gamma = 0 meaning the Gumbel limit exp(-e^{-x}). |gamma| below 1e-8
// routes to the limit branch; nearer zero the direct formula cancels badly.
inline constexpr double kGevGumbelThreshold = 1e-8;

double gev_cdf(double gamma, double x);
double gev_pdf(double gamma, double x);
double gev_quantile(double gamma, double q);  // q in (0,1), inverts gev_cdf

enum class MarginFamily { exponential, pareto, frechet, uniform, gev };

// Univariate margin with enough structure for norming and diagnostics.
// Factories below populate the callables; custom margins may fill the
// fields directly (cdf/pdf/quantile must be mutually consistent).
struct Margin {
  MarginFamily family;
  std::string name;
  double gamma;           // tail index
  double alpha = 0.0;     // shape for pareto/frechet, else unused
  double upper_endpoint;  // sup{x : F(x) < 1}, +infinity when unbounded
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;
  std::function<double(double)> quantile;  // on (0, 1]; quantile(1) = endpoint

  // Pointwise limit of -n(1 - F(a_n x + b_n)) under the family's default
  // norming constants: the log-cdf of the margin's extremal limit law.
  double limit_log_cdf(double x) const;
  // d/dx of limit_log_cdf on the limit law's support interior.
  double limit_log_cdf_derivative(double x) const;
};

Margin exponential_margin();            // F(x) = 1 - e^{-x}, gamma = 0
Margin pareto_margin(double alpha);     // F(x) = 1 - x^{-alpha}, gamma = 1/alpha
Margin frechet_margin(double alpha);    // F(x) = exp(-x^{-alpha}), gamma = 1/alpha
Margin uniform_margin();                // F(x) = x on [0,1], gamma = -1
Margin gev_margin(double gamma);        // F = G*_gamma itself

struct NormingConstants {
  double a;  // scale, > 0
  double b;  // location
};

// Textbook norming for the named families; n = 1 always yields (1, 0).
//   exponential: (1, log n)          uniform: (1/n, 1 - 1/n)
//   pareto:      (n^{1/alpha}, 0)    frechet: (F^{-1}(1 - 1/n), 0)
//   gev:         (n^gamma, (n^gamma - 1)/gamma), Gumbel branch (1, log n)
NormingConstants default_norming_constants(const Margin& margin, long n);

struct VonMisesEntry {
  double point;
  double ratio;
  double target;
};

// Tail-regularity ratios along a schedule of evaluation points:
//   gamma > 0:  x f(x) / (1 - F(x))               -> 1/gamma
//   gamma < 0:  (x0 - x) f(x) / (1 - F(x))        -> -1/gamma
//   gamma = 0:  f(x)/(1-F(x))^2 * int_x^{x0} (1 - F(t)) dt -> 1
// The finite-endpoint requirement for gamma < 0 is enforced.
std::vector<VonMisesEntry> von_mises_diagnostic(const Margin& margin,
                                                std::span<const double> points);

// Componentwise quantile transform F_j^{-1}(1 + eta_j / n) of a vector eta
// from the standard negative-orthant scale. eta = 0 maps to the right
// endpoints.
std::vector<double> marginal_transform_maxima(std::span<const double> eta,
                                              std::span<const Margin> margins,
                                              long n);

}  // namespace maxstable
