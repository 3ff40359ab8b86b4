#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recdim/slope.hpp"

namespace recdim {

/// Finite-scale checks of the elementary waiting-time identities:
/// (a) shift invariance: slopes of (x,y) and (T(x),y) agree within
///     O(1/k_max) because the entrance times differ by one index;
/// (b) Lipschitz maps: R(x,y) >= R(x,T(y)) up to tolerance;
/// (c) the alpha-Hoelder variant R(x,y) >= alpha * R(x,T(y)), exercised on
///     the synthetic square map x -> x^2 near its fixed point.
struct IndicatorPropertyReport {
  std::string system;
  int n_pairs = 0;
  double tolerance = 0.15;
  int k_min = 0, k_max = 0;
  std::uint64_t orbit_n = 0, seed = 0;

  double max_shift_diff = 0.0;    // max over pairs |Rsup(x,y) - Rsup(Tx,y)|
  double shift_bound = 0.0;       // 2 / k_max
  std::size_t shift_pairs = 0;
  double lipschitz_fraction = 0.0;
  std::size_t lipschitz_pairs = 0;
  std::size_t excluded_pairs = 0;

  bool shift_ok() const { return shift_pairs > 0 && max_shift_diff <= shift_bound; }
};

struct IndicatorPropertyParams {
  int n_pairs = 100;
  std::uint64_t orbit_n = 1'000'000;
  double tolerance = 0.15;
  double tail_fraction = 0.5;
  std::uint64_t seed = 1;
  int workers = 1;
};

IndicatorPropertyReport indicator_properties_check(const SystemSpec& sys,
                                                   const RadiusSchedule& sched,
                                                   const IndicatorPropertyParams& params);

/// Synthetic check (c): orbit of x -> x^2 approaching 0, target near 0 and
/// its image, declared exponent alpha = 1/2.
struct HolderCheckResult {
  double alpha = 0.5;
  double r_xy = 0.0;
  double r_x_ty = 0.0;
  bool pass = false;
};
HolderCheckResult holder_square_map_check(double tolerance);

}  // namespace recdim
