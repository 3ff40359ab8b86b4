#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace recdim {

using u128 = unsigned __int128;

/// Fraction in [0,1) stored with 128 fractional bits.  Addition, subtraction
/// and multiplication by an integer wrap modulo 1 with no rounding, so circle
/// orbits can run for 1e8+ steps without drift.
struct FixedPointAngle {
  u128 raw = 0;  // value = raw / 2^128

  static FixedPointAngle from_raw(u128 v) { return FixedPointAngle{v}; }

  /// Exact binary expansion of a double in [0,1).
  static FixedPointAngle from_double(double x) {
    // x * 2^64 is an exact exponent shift; the two truncations pick up the
    // full 53-bit mantissa.
    double hi_d = std::floor(std::ldexp(x, 64));
    auto hi = static_cast<std::uint64_t>(hi_d);
    double rem = std::ldexp(x, 64) - hi_d;
    auto lo = static_cast<std::uint64_t>(std::ldexp(rem, 64));
    return FixedPointAngle{(static_cast<u128>(hi) << 64) | lo};
  }

  /// floor(p * 2^128 / q) for 64-bit p < q.  p == q maps to the largest
  /// representable value (1 is not in the domain).
  static FixedPointAngle from_ratio(std::uint64_t p, std::uint64_t q) {
    if (p >= q) return FixedPointAngle{~static_cast<u128>(0)};
    u128 rem = p;
    u128 out = 0;
    for (int half = 0; half < 2; ++half) {
      rem <<= 64;
      out = (out << 64) | static_cast<std::uint64_t>(rem / q);
      rem %= q;
    }
    return FixedPointAngle{out};
  }

  double to_double() const {
    return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(raw >> 64)), -64) +
           std::ldexp(static_cast<double>(static_cast<std::uint64_t>(raw)), -128);
  }

  friend FixedPointAngle operator+(FixedPointAngle a, FixedPointAngle b) {
    return FixedPointAngle{a.raw + b.raw};
  }
  friend FixedPointAngle operator-(FixedPointAngle a, FixedPointAngle b) {
    return FixedPointAngle{a.raw - b.raw};
  }
  FixedPointAngle& operator+=(FixedPointAngle o) {
    raw += o.raw;
    return *this;
  }
  friend bool operator==(FixedPointAngle a, FixedPointAngle b) { return a.raw == b.raw; }
  friend bool operator!=(FixedPointAngle a, FixedPointAngle b) { return a.raw != b.raw; }
};

/// n * a mod 1, exact (the 128-bit wrap is the mod-1 reduction).
inline FixedPointAngle mul_mod1(FixedPointAngle a, std::uint64_t n) {
  return FixedPointAngle{a.raw * static_cast<u128>(n)};
}

/// Distance to the nearest integer, ||x||, as a raw 128-bit fraction.
inline u128 nearest_int_dist_raw(u128 x) {
  u128 neg = static_cast<u128>(0) - x;
  return x < neg ? x : neg;
}

/// Wraparound circle distance min(|a-b|, 1-|a-b|), exact, <= 1/2.
inline u128 circle_dist_raw(u128 a, u128 b) { return nearest_int_dist_raw(a - b); }

/// |a-b| on the unit interval (no wrap), exact.
inline u128 interval_dist_raw(u128 a, u128 b) { return a >= b ? a - b : b - a; }

inline double raw_to_double(u128 v) { return FixedPointAngle{v}.to_double(); }

/// Radius 2^-k as a raw fraction; valid for 1 <= k <= 127.
inline u128 dyadic_raw(int k) { return static_cast<u128>(1) << (128 - k); }

std::string u128_to_string(u128 v);

}  // namespace recdim
