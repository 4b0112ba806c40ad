#include "nudd/rng.hpp"

#include <cmath>
#include <numbers>

namespace nudd {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += kGamma;
  return mix64(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose, std::uint64_t i,
                          std::uint64_t j) {
  // FNV-1a over the purpose tag.
  std::uint64_t tag = 0xCBF29CE484222325ULL;
  for (unsigned char c : purpose) {
    tag ^= c;
    tag *= 0x100000001B3ULL;
  }
  std::uint64_t h = mix64(master ^ kGamma);
  h = mix64(h ^ tag);
  h = mix64(h + (i + 1) * kGamma);
  h = mix64(h + (j + 1) * 0xD1B54A32D192ED03ULL);
  return h;
}

}  // namespace nudd
