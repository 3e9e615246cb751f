#pragma once

#include <cstdint>

namespace gaexplain {

/// xoshiro256** seeded through splitmix64.
///
/// Every derived draw (bits, bounded integers, unit doubles) is built from
/// next() with integer arithmetic only, so a seed reproduces the same stream
/// on every platform. std::*_distribution is deliberately not used since its
/// output is implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() noexcept;

  /// One fair bit, from the top bit of a single draw.
  bool bit() noexcept { return (next() >> 63) != 0; }

  /// Uniform in [0, bound), unbiased. bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform in [0, 1) with 53 bits of precision.
  double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// True with probability p. p <= 0 never fires; p >= 1 always does. Both
  /// still consume one draw so stream alignment does not depend on p.
  bool bernoulli(double p) noexcept { return unit() < p; }

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

}  // namespace gaexplain
