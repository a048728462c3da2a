#pragma once

#include <cmath>
#include <cstdint>

namespace maxstable {

// Counter-based generator in the splitmix64 family. The (seed, stream)
// pair is hashed into a starting state once, and each draw advances a
// counter through the usual Weyl sequence, so a source is a pure function
// of (seed, stream, draw index). Distinct stream ids land in far-apart,
// independently mixed sequences, which is what the parallel experiment
// runners rely on. Statistical quality, not cryptography.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream),
        state_(mix(seed ^ mix(stream ^ 0x9E3779B97F4A7C15ull))) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t draws() const { return counter_; }

  std::uint64_t next_u64() {
    ++counter_;
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // Strictly inside (0, 1): 53 random bits centered in their cell.
  double next_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_exponential() { return -std::log(next_open01()); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_;
  std::uint64_t counter_ = 0;
};

}  // namespace maxstable
