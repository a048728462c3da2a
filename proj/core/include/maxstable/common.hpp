#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxstable {

// Hard cap on the number of coordinates any combinatorial routine will touch.
// Bell(8) = 4140 set partitions; beyond that the Faa di Bruno sums explode.
inline constexpr int kDefaultMaxDimension = 8;

// Thrown when an argument lies outside an operation's mathematical domain
// (positive coordinate where the negative orthant is required, GPC query
// below u0, quantile level outside (0,1), ...).
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Thrown when a requested dimension exceeds the combinatorial guard.
class DimensionLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Thrown when a family does not support the requested operation
// (sup-norm partial derivatives, samplers for unsupported norms, ...).
class UnsupportedFamilyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Thrown when a computation produces or receives a non-finite value.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const char* what) {
  if (!cond) throw DomainError(what);
}

inline bool all_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

// Deterministic reduction: the summation tree depends only on the length,
// never on thread count or evaluation order.
double pairwise_sum(std::span<const double> values);

std::string format_point(std::span<const double> x);

// Shortest representation that round-trips a double ("%.17g" fallback is
// never needed with C++17 to_chars, but the name states the intent).
std::string format_double(double v);

}  // namespace maxstable
