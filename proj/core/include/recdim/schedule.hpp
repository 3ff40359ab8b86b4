#pragma once

#include <stdexcept>

#include "recdim/fixed128.hpp"

namespace recdim {

/// Dyadic radius schedule r_k = 2^-k for k = k_min..k_max (strictly
/// decreasing radii).
struct RadiusSchedule {
  int k_min = 1;
  int k_max = 2;

  RadiusSchedule() = default;
  RadiusSchedule(int lo, int hi) : k_min(lo), k_max(hi) {
    if (lo < 1 || hi <= lo || hi > 120)
      throw std::invalid_argument("radius schedule requires 1 <= k_min < k_max <= 120");
  }

  int count() const { return k_max - k_min + 1; }
  int k_at(int idx) const { return k_min + idx; }
  u128 threshold_raw(int k) const { return dyadic_raw(k); }
  double radius(int k) const { return std::ldexp(1.0, -k); }
};

}  // namespace recdim
