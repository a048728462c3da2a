#include "maxstable/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "maxstable/common.hpp"

namespace maxstable {

double sample_mean(std::span<const double> x) {
  require(!x.empty(), "sample_mean: empty input");
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc / static_cast<double>(x.size());
}

double sample_correlation(std::span<const double> x,
                          std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2,
          "sample_correlation: need two equally long columns");
  const double mx = sample_mean(x);
  const double my = sample_mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  require(sxx > 0.0 && syy > 0.0, "sample_correlation: constant column");
  return sxy / std::sqrt(sxx * syy);
}

namespace {

// Merge-sort inversion count; `work` is scratch of the same size.
std::uint64_t merge_count(std::vector<double>& a, std::vector<double>& work,
                          std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps =
      merge_count(a, work, lo, mid) + merge_count(a, work, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[j] < a[i]) {
      swaps += mid - i;
      work[k++] = a[j++];
    } else {
      work[k++] = a[i++];
    }
  }
  while (i < mid) work[k++] = a[i++];
  while (j < hi) work[k++] = a[j++];
  std::copy(work.begin() + static_cast<std::ptrdiff_t>(lo),
            work.begin() + static_cast<std::ptrdiff_t>(hi),
            a.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

// Sum over equal-value runs of t(t-1)/2, for tie corrections.
template <class Less>
std::uint64_t tied_pairs(const std::vector<std::pair<double, double>>& v,
                         Less same) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i + 1;
    while (j < v.size() && same(v[i], v[j])) ++j;
    const std::uint64_t t = j - i;
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

}  // namespace

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2,
          "kendall_tau: need two equally long columns");
  const std::size_t k = x.size();
  std::vector<std::pair<double, double>> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = {x[i], y[i]};
  std::sort(v.begin(), v.end());

  const std::uint64_t n0 = k * (k - 1) / 2;
  const std::uint64_t n1 = tied_pairs(
      v, [](const auto& a, const auto& b) { return a.first == b.first; });
  const std::uint64_t n3 = tied_pairs(v, [](const auto& a, const auto& b) {
    return a.first == b.first && a.second == b.second;
  });

  std::vector<double> ys(k), work(k);
  for (std::size_t i = 0; i < k; ++i) ys[i] = v[i].second;
  const std::uint64_t swaps = merge_count(ys, work, 0, k);

  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    return a.second < b.second;
  });
  const std::uint64_t n2 = tied_pairs(
      v, [](const auto& a, const auto& b) { return a.second == b.second; });

  const double numer = static_cast<double>(n0) - static_cast<double>(n1) -
                       static_cast<double>(n2) + static_cast<double>(n3) -
                       2.0 * static_cast<double>(swaps);
  const double denom =
      std::sqrt((static_cast<double>(n0) - static_cast<double>(n1)) *
                (static_cast<double>(n0) - static_cast<double>(n2)));
  require(denom > 0.0, "kendall_tau: constant column");
  return numer / denom;
}

double ks_statistic(std::span<const double> data,
                    const std::function<double(double)>& cdf) {
  require(!data.empty(), "ks_statistic: empty input");
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const double k = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = (static_cast<double>(i) + 1.0) / k - f;
    const double below = f - static_cast<double>(i) / k;
    worst = std::max({worst, above, below});
  }
  return worst;
}

double ks_statistic_uniform01(std::span<const double> data) {
  return ks_statistic(data, [](double x) {
    return std::clamp(x, 0.0, 1.0);
  });
}

double ks_critical_1pct(long k) {
  require(k >= 1, "ks_critical_1pct: k >= 1");
  return 1.63 / std::sqrt(static_cast<double>(k));
}

}  // namespace maxstable
