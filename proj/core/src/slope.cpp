#include "recdim/slope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace recdim {

ScaleSeries series_from_profile(const HittingProfile& p) {
  ScaleSeries s;
  s.k_min = p.k_min;
  s.k_max = p.k_max;
  s.log_value.resize(p.tau.size(), 0.0);
  s.censored.resize(p.tau.size(), false);
  for (std::size_t i = 0; i < p.tau.size(); ++i) {
    if (p.tau[i] == kCensored) {
      s.censored[i] = true;
    } else {
      // Sequence mode admits tau = 0 (the sequence starts inside the ball);
      // its log contribution is clamped to 0.
      s.log_value[i] = std::log2(static_cast<double>(std::max<std::uint64_t>(p.tau[i], 1)));
    }
  }
  return s;
}

ScaleSeries series_from_counts(const RadiusSchedule& sched,
                               const std::vector<std::uint64_t>& counts, std::uint64_t n) {
  if (counts.size() != static_cast<std::size_t>(sched.count()))
    throw std::invalid_argument("counts do not match the schedule");
  ScaleSeries s;
  s.k_min = sched.k_min;
  s.k_max = sched.k_max;
  s.log_value.resize(counts.size(), 0.0);
  s.censored.resize(counts.size(), false);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) {
      s.censored[i] = true;  // empty ball: no mass resolved at this scale
    } else {
      s.log_value[i] =
          std::log2(static_cast<double>(n)) - std::log2(static_cast<double>(counts[i]));
    }
  }
  return s;
}

SlopeEstimate slope_estimate(const ScaleSeries& series, QuantityKind kind, double tail_fraction) {
  if (tail_fraction <= 0.0 || tail_fraction > 1.0)
    throw std::invalid_argument("tail_fraction must lie in (0,1]");
  const int K = series.k_max - series.k_min + 1;
  if (K < 2 || static_cast<int>(series.log_value.size()) != K)
    throw std::invalid_argument("malformed scale series");

  SlopeEstimate est;
  est.kind = kind;
  est.k_min = series.k_min;
  est.k_max = series.k_max;

  int uncensored = 0;
  for (int i = 0; i < K; ++i) {
    int k = series.k_min + i;
    if (series.censored[static_cast<std::size_t>(i)]) {
      est.censored_scales.push_back(k);
    } else {
      ++uncensored;
      est.per_scale_slopes.emplace_back(k, series.log_value[static_cast<std::size_t>(i)] / k);
    }
  }

  // Tail window: the last ceil(f*K) scales of the schedule.
  int window = std::min(K, static_cast<int>(std::ceil(tail_fraction * K)));
  est.window_lo = series.k_max - window + 1;
  est.window_hi = series.k_max;

  if (uncensored == 0) {
    // Unobserved at every scale: the quantity is +infinity by convention.
    est.infinite = true;
    return est;
  }
  if (uncensored < 4)
    throw InsufficientScalesError("fewer than 4 uncensored scales", est.censored_scales);

  double sup = -std::numeric_limits<double>::infinity();
  double inf = std::numeric_limits<double>::infinity();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int m = 0;
  for (const auto& [k, s] : est.per_scale_slopes) {
    if (k < est.window_lo) continue;
    sup = std::max(sup, s);
    inf = std::min(inf, s);
    double x = k, y = s * k;  // regress the log-quantity on k
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++m;
  }
  est.window_uncensored = m;
  if (m == 0) return est;  // window fully censored; caller excludes the pair

  est.sup_proxy = sup;
  est.inf_proxy = inf;
  if (m >= 2) {
    double det = m * sxx - sx * sx;
    est.ols_slope = det != 0.0 ? (m * sxy - sx * sy) / det : sup;
    double ss_tot = syy - sy * sy / m;
    double intercept = (sy - est.ols_slope * sx) / m;
    double ss_res = 0.0;
    for (const auto& [k, s] : est.per_scale_slopes) {
      if (k < est.window_lo) continue;
      double e = s * k - (intercept + est.ols_slope * k);
      ss_res += e * e;
    }
    est.ols_r2 = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  } else {
    est.ols_slope = sup;
    est.ols_r2 = 1.0;
  }
  return est;
}

SlopeEstimate dimension_estimate(const OrbitBuffer& pts, const GridIndex& idx, const Point& y,
                                 const RadiusSchedule& sched, double tail_fraction) {
  auto counts = occupation_counts(pts, idx, y, sched);
  bool all_zero = std::all_of(counts.begin(), counts.end(),
                              [](std::uint64_t c) { return c == 0; });
  if (all_zero)
    throw std::domain_error("target lies outside the empirical support at every scale");
  return slope_estimate(series_from_counts(sched, counts, pts.n), QuantityKind::Dimension,
                        tail_fraction);
}

}  // namespace recdim
