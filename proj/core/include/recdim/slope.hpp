#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "recdim/grid_index.hpp"
#include "recdim/hitting.hpp"

namespace recdim {

enum class QuantityKind : std::uint8_t { Recurrence, Dimension };

/// Tail-slope proxies for limsup/liminf quantities.  Per-scale slopes are
/// s_k = log2(tau_k)/k for waiting times and s_k = -log2(mu(B(y,2^-k)))/k
/// for ball masses; sup/inf proxies are the max/min of s_k over the tail
/// window, and ols_slope is the least-squares slope of the log-quantity
/// against k over the same window (stability diagnostic, unbiased where the
/// chord proxies carry an O(1/k) offset).
struct SlopeEstimate {
  QuantityKind kind = QuantityKind::Recurrence;
  int k_min = 0, k_max = 0;
  int window_lo = 0, window_hi = 0;        // tail window within the schedule
  std::vector<std::pair<int, double>> per_scale_slopes;  // uncensored scales only
  std::vector<int> censored_scales;
  int window_uncensored = 0;
  bool infinite = false;   // every scale censored: quantity is +infinity
  double sup_proxy = 0.0;
  double inf_proxy = 0.0;
  double ols_slope = 0.0;
  double ols_r2 = 0.0;

  /// True when the tail window itself is fully observed (reports exclude
  /// pairs for which it is not).
  bool window_complete() const { return window_uncensored == window_hi - window_lo + 1; }
};

struct InsufficientScalesError : std::runtime_error {
  std::vector<int> censored_scales;
  InsufficientScalesError(const std::string& what, std::vector<int> censored)
      : std::runtime_error(what), censored_scales(std::move(censored)) {}
};

/// log-quantity values per scale: y_k = log2(tau_k) or -log2(mu_k); censored
/// scales flagged.  tail_fraction in (0,1] selects the window (last
/// ceil(f*K) scales of the schedule).
struct ScaleSeries {
  int k_min = 0, k_max = 0;
  std::vector<double> log_value;   // indexed by k - k_min
  std::vector<bool> censored;
};

SlopeEstimate slope_estimate(const ScaleSeries& series, QuantityKind kind,
                             double tail_fraction = 0.5);

ScaleSeries series_from_profile(const HittingProfile& profile);
ScaleSeries series_from_counts(const RadiusSchedule& sched,
                               const std::vector<std::uint64_t>& counts, std::uint64_t n);

inline SlopeEstimate slope_from_profile(const HittingProfile& p, double tail_fraction = 0.5) {
  return slope_estimate(series_from_profile(p), QuantityKind::Recurrence, tail_fraction);
}

/// Occupation-count local dimension estimate at y.  Scales with zero count
/// are censored; all-zero counts mean y is outside the empirical support.
SlopeEstimate dimension_estimate(const OrbitBuffer& pts, const GridIndex& idx, const Point& y,
                                 const RadiusSchedule& sched, double tail_fraction = 0.5);

}  // namespace recdim
