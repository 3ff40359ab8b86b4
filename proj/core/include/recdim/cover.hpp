#pragma once

#include <cstdint>
#include <vector>

#include "recdim/slope.hpp"

namespace recdim {

/// Hausdorff-style cover bound for the sub-level set
/// Yh = { y : lower recurrence slope <= h }: Yh is covered by the balls
/// B(x_j, 2^-k) with j <= 2^{(h+eps)k}, so its d-dimensional outer measure
/// at scale k0 is bounded by sum_{k>=k0} 2^{1+d} 2^{k(h+eps-d)}, geometric
/// for d > h+eps.
struct CoverEstimate {
  double h = 0.0, epsilon = 0.0, d = 0.0;
  int k0 = 0;
  int grid_k = 0;  // target grid resolution exponent
  double analytic_tail_bound = 0.0;
  double direct_tail_sum = 0.0;  // truncated series, for cross-checking

  struct PerScale {
    int k = 0;
    double mass_bound = 0.0;      // 2^{k(h+eps-d)+1+d}
    std::uint64_t ball_budget = 0;  // floor(2^{(h+eps)k}) capped at n_max
    std::size_t members = 0;        // |Yh| with data at this scale
    std::size_t covered = 0;        // members hit within the ball budget
  };
  std::vector<PerScale> per_scale;

  std::size_t y_h_size = 0;
  std::size_t y_h_insufficient = 0;      // grid points with too few observed scales
  double covered_fraction_deepest = 0.0; // at each member's deepest observed scale
};

/// profiles: one hitting profile per grid target (any mode).  Requires
/// d > h + epsilon.
CoverEstimate cover_dimension_bound(const std::vector<HittingProfile>& profiles, double h,
                                    double epsilon, double d, int k0,
                                    double tail_fraction = 0.5);

/// Closed form of the geometric tail sum_{k>=k0} 2^{1+d} 2^{k(h+eps-d)}.
double cover_tail_bound_analytic(double h, double epsilon, double d, int k0);
/// Term-by-term summation until relative convergence below 1e-14.
double cover_tail_bound_direct(double h, double epsilon, double d, int k0);

}  // namespace recdim
