#pragma once

#include <cstdint>
#include <string_view>

namespace nudd {

/// SplitMix64 (Steele, Lea, Flood 2014). The state is a plain counter
/// advanced by a fixed odd increment and each output is a bijective mix of
/// it, so streams are identical on every platform and compiler.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller (one value per call, no caching).
  double normal();

 private:
  std::uint64_t state_;
};

/// Stateless 64-bit finaliser used for seed derivation.
std::uint64_t mix64(std::uint64_t z);

/// Sub-seed for (purpose, i, j) under `master`. Distinct purposes and
/// indices give unrelated streams; the function is pure.
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose, std::uint64_t i,
                          std::uint64_t j = 0);

}  // namespace nudd
