#pragma once

#include <cstdint>
#include <string_view>

#include "recdim/fixed128.hpp"

namespace recdim {

/// splitmix64; fast, reproducible across platforms, one 64-bit word of state.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  u128 uniform_u128() {
    u128 hi = next();
    return (hi << 64) | next();
  }

  FixedPointAngle uniform_angle() { return FixedPointAngle{uniform_u128()}; }
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Derives an independent substream seed from a root seed, a purpose label and
/// an index.  All randomness in an experiment flows through this, so adding
/// targets does not perturb source draws.
inline std::uint64_t substream_seed(std::uint64_t root, std::string_view purpose,
                                    std::uint64_t index = 0) {
  SplitMix64 mix(root ^ fnv1a64(purpose) ^ (index * 0xd1b54a32d192ed03ULL));
  mix.next();
  return mix.next();
}

}  // namespace recdim
