#pragma once

#include <functional>
#include <span>

namespace maxstable {

double sample_mean(std::span<const double> x);

// Pearson correlation of two equally long columns.
double sample_correlation(std::span<const double> x,
                          std::span<const double> y);

// Kendall's tau-b via the merge-sort inversion count, O(k log k), with the
// usual tie corrections in both coordinates.
double kendall_tau(std::span<const double> x, std::span<const double> y);

// Kolmogorov-Smirnov statistic sup_x |F_k(x) - F(x)| against a reference
// cdf, evaluated at the order statistics.
double ks_statistic(std::span<const double> data,
                    const std::function<double(double)>& cdf);

// Same against the Unif(0,1) cdf.
double ks_statistic_uniform01(std::span<const double> data);

// Asymptotic 1% critical value 1.63 / sqrt(k) for the KS statistic.
double ks_critical_1pct(long k);

}  // namespace maxstable
