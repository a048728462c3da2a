#include "maxstable/gev.hpp"

#include <cmath>
#include <limits>

#include "maxstable/common.hpp"
#include "maxstable/quadrature.hpp"

namespace maxstable {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool gumbel_branch(double gamma) {
  return std::fabs(gamma) < kGevGumbelThreshold;
}
}  // namespace

double gev_cdf(double gamma, double x) {
  if (gumbel_branch(gamma)) return std::exp(-std::exp(-x));
  const double z = 1.0 + gamma * x;
  if (z <= 0.0) return gamma > 0.0 ? 0.0 : 1.0;
  return std::exp(-std::exp(-std::log1p(gamma * x) / gamma));
}

double gev_pdf(double gamma, double x) {
  if (gumbel_branch(gamma)) {
    const double e = std::exp(-x);
    return std::exp(-x - e);
  }
  const double z = 1.0 + gamma * x;
  if (z <= 0.0) return 0.0;
  const double log_z = std::log1p(gamma * x);
  const double t = std::exp(-log_z / gamma);  // (1+gamma x)^{-1/gamma}
  return std::exp(-(1.0 / gamma + 1.0) * log_z - t);
}

double gev_quantile(double gamma, double q) {
  require(q > 0.0 && q < 1.0, "gev_quantile: level must be in (0,1)");
  const double ll = std::log(-std::log(q));
  if (gumbel_branch(gamma)) return -ll;
  // ((-log q)^{-gamma} - 1)/gamma, stable for small gamma via expm1.
  return std::expm1(-gamma * ll) / gamma;
}

double Margin::limit_log_cdf(double x) const {
  switch (family) {
    case MarginFamily::exponential:
      return -std::exp(-x);
    case MarginFamily::pareto:
    case MarginFamily::frechet:
      return x <= 0.0 ? -kInf : -std::pow(x, -alpha);
    case MarginFamily::uniform:
      return x >= 1.0 ? 0.0 : x - 1.0;
    case MarginFamily::gev: {
      if (gumbel_branch(gamma)) return -std::exp(-x);
      const double z = 1.0 + gamma * x;
      if (z <= 0.0) return gamma > 0.0 ? -kInf : 0.0;
      return -std::exp(-std::log1p(gamma * x) / gamma);
    }
  }
  throw DomainError("Margin: unknown family");
}

double Margin::limit_log_cdf_derivative(double x) const {
  switch (family) {
    case MarginFamily::exponential:
      return std::exp(-x);
    case MarginFamily::pareto:
    case MarginFamily::frechet:
      return x <= 0.0 ? 0.0 : alpha * std::pow(x, -alpha - 1.0);
    case MarginFamily::uniform:
      return x >= 1.0 ? 0.0 : 1.0;
    case MarginFamily::gev: {
      if (gumbel_branch(gamma)) return std::exp(-x);
      const double z = 1.0 + gamma * x;
      if (z <= 0.0) return 0.0;
      return std::exp(-(1.0 / gamma + 1.0) * std::log1p(gamma * x));
    }
  }
  throw DomainError("Margin: unknown family");
}

Margin exponential_margin() {
  Margin m;
  m.family = MarginFamily::exponential;
  m.name = "exponential";
  m.gamma = 0.0;
  m.upper_endpoint = kInf;
  m.cdf = [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); };
  m.pdf = [](double x) { return x < 0.0 ? 0.0 : std::exp(-x); };
  m.quantile = [](double q) {
    require(q > 0.0 && q <= 1.0, "exponential quantile: level in (0,1]");
    return -std::log1p(-q);
  };
  return m;
}

Margin pareto_margin(double alpha) {
  require(alpha > 0.0, "pareto margin: alpha > 0");
  Margin m;
  m.family = MarginFamily::pareto;
  m.name = "pareto(alpha=" + std::to_string(alpha) + ")";
  m.gamma = 1.0 / alpha;
  m.alpha = alpha;
  m.upper_endpoint = kInf;
  m.cdf = [alpha](double x) {
    return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -alpha);
  };
  m.pdf = [alpha](double x) {
    return x < 1.0 ? 0.0 : alpha * std::pow(x, -alpha - 1.0);
  };
  m.quantile = [alpha](double q) {
    require(q > 0.0 && q <= 1.0, "pareto quantile: level in (0,1]");
    return std::pow(1.0 - q, -1.0 / alpha);
  };
  return m;
}

Margin frechet_margin(double alpha) {
  require(alpha > 0.0, "frechet margin: alpha > 0");
  Margin m;
  m.family = MarginFamily::frechet;
  m.name = "frechet(alpha=" + std::to_string(alpha) + ")";
  m.gamma = 1.0 / alpha;
  m.alpha = alpha;
  m.upper_endpoint = kInf;
  m.cdf = [alpha](double x) {
    return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -alpha));
  };
  m.pdf = [alpha](double x) {
    return x <= 0.0 ? 0.0
                    : alpha * std::pow(x, -alpha - 1.0) *
                          std::exp(-std::pow(x, -alpha));
  };
  m.quantile = [alpha](double q) {
    require(q > 0.0 && q <= 1.0, "frechet quantile: level in (0,1]");
    return q == 1.0 ? kInf : std::pow(-std::log(q), -1.0 / alpha);
  };
  return m;
}

Margin uniform_margin() {
  Margin m;
  m.family = MarginFamily::uniform;
  m.name = "uniform";
  m.gamma = -1.0;
  m.upper_endpoint = 1.0;
  m.cdf = [](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x); };
  m.pdf = [](double x) { return (x < 0.0 || x > 1.0) ? 0.0 : 1.0; };
  m.quantile = [](double q) {
    require(q > 0.0 && q <= 1.0, "uniform quantile: level in (0,1]");
    return q;
  };
  return m;
}

Margin gev_margin(double gamma) {
  Margin m;
  m.family = MarginFamily::gev;
  m.name = "gev(gamma=" + std::to_string(gamma) + ")";
  m.gamma = gamma;
  m.upper_endpoint =
      (gamma < 0.0 && !gumbel_branch(gamma)) ? -1.0 / gamma : kInf;
  m.cdf = [gamma](double x) { return gev_cdf(gamma, x); };
  m.pdf = [gamma](double x) { return gev_pdf(gamma, x); };
  m.quantile = [gamma, upper = m.upper_endpoint](double q) {
    require(q > 0.0 && q <= 1.0, "gev quantile: level in (0,1]");
    return q == 1.0 ? upper : gev_quantile(gamma, q);
  };
  return m;
}

NormingConstants default_norming_constants(const Margin& margin, long n) {
  require(n >= 1, "default_norming_constants: n >= 1");
  if (n == 1) return {1.0, 0.0};
  const double dn = static_cast<double>(n);
  switch (margin.family) {
    case MarginFamily::exponential:
      return {1.0, std::log(dn)};
    case MarginFamily::pareto:
      return {std::pow(dn, 1.0 / margin.alpha), 0.0};
    case MarginFamily::frechet:
      return {margin.quantile(1.0 - 1.0 / dn), 0.0};
    case MarginFamily::uniform:
      return {1.0 / dn, 1.0 - 1.0 / dn};
    case MarginFamily::gev: {
      if (gumbel_branch(margin.gamma)) return {1.0, std::log(dn)};
      const double a = std::pow(dn, margin.gamma);
      return {a, (a - 1.0) / margin.gamma};
    }
  }
  throw UnsupportedFamilyError("default_norming_constants: unknown family");
}

namespace {

// int_x^{x0} (1 - F(t)) dt. An unbounded endpoint is mapped to (0,1] via
// t = x - log s, which suits the exponentially decaying tails the gamma = 0
// diagnostic is for: the transformed integrand (1 - F(x - log s))/s is
// analytic there (exactly constant for the exponential margin), so the rule
// converges to full precision.
double upper_tail_integral(const Margin& m, double x) {
  if (std::isfinite(m.upper_endpoint)) {
    return integrate_1d([&](double t) { return 1.0 - m.cdf(t); }, x,
                        m.upper_endpoint, 96);
  }
  return integrate_1d(
      [&](double s) { return (1.0 - m.cdf(x - std::log(s))) / s; }, 0.0, 1.0,
      96);
}

}  // namespace

std::vector<VonMisesEntry> von_mises_diagnostic(
    const Margin& margin, std::span<const double> points) {
  std::vector<VonMisesEntry> out;
  out.reserve(points.size());
  const double g = margin.gamma;
  if (g < 0.0 && !std::isfinite(margin.upper_endpoint))
    throw DomainError(
        "von_mises_diagnostic: negative tail index needs a finite endpoint");
  for (double x : points) {
    const double f = margin.pdf(x);
    const double surv = 1.0 - margin.cdf(x);
    require(surv > 0.0, "von_mises_diagnostic: point at or past the endpoint");
    VonMisesEntry e;
    e.point = x;
    if (gumbel_branch(g)) {
      e.ratio = f / (surv * surv) * upper_tail_integral(margin, x);
      e.target = 1.0;
    } else if (g > 0.0) {
      e.ratio = x * f / surv;
      e.target = 1.0 / g;
    } else {
      e.ratio = (margin.upper_endpoint - x) * f / surv;
      e.target = -1.0 / g;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<double> marginal_transform_maxima(std::span<const double> eta,
                                              std::span<const Margin> margins,
                                              long n) {
  require(n >= 1, "marginal_transform_maxima: n >= 1");
  require(eta.size() == margins.size(),
          "marginal_transform_maxima: margin count mismatch");
  std::vector<double> out(eta.size());
  for (std::size_t j = 0; j < eta.size(); ++j) {
    require(eta[j] <= 0.0, "marginal_transform_maxima: eta must be <= 0");
    const double q = 1.0 + eta[j] / static_cast<double>(n);
    if (q <= 0.0)
      throw DomainError("marginal_transform_maxima: level below the quantile domain");
    out[j] = margins[j].quantile(q);
  }
  return out;
}

}  // namespace maxstable
