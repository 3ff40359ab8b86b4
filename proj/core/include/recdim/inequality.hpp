#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recdim/slope.hpp"

namespace recdim {

/// Per-pair and per-target records comparing recurrence slopes against
/// local-dimension slopes, with the censoring bookkeeping the fractions are
/// conditioned on.
struct InequalityReport {
  struct DimRecord {
    int index = 0;
    Point point;
    double d_sup = 0.0, d_inf = 0.0, d_ols = 0.0;
  };
  struct PairRecord {
    int source = 0, target = 0;
    double r_sup = 0.0, r_inf = 0.0, r_ols = 0.0;
    bool infinite = false;
    bool excluded = false;  // censored tail scale
    bool lower_ok = false;  // R_inf >= d_inf - tol
    bool upper_ok = false;  // R_sup >= d_sup - tol
  };
  struct DiagonalRecord {
    int source = 0;
    double r_sup = 0.0, r_inf = 0.0;
    bool excluded = false;
    bool upper_ok = false;  // R_sup(x,x) <= d_sup(x) + tol
  };

  std::string system;
  bool measure_invariant = true;
  double tolerance = 0.15;
  double tail_fraction = 0.5;
  int k_min = 0, k_max = 0;
  std::uint64_t orbit_n = 0, sample_n = 0, seed = 0;

  std::vector<DimRecord> target_dims;
  std::vector<DimRecord> source_dims;
  std::vector<PairRecord> pairs;
  std::vector<DiagonalRecord> diagonal;

  std::size_t excluded_pairs = 0;
  std::size_t excluded_diagonal = 0;
  double frac_lower = 0.0;     // off-diagonal R_inf >= d_inf - tol
  double frac_upper = 0.0;     // off-diagonal R_sup >= d_sup - tol
  double frac_diagonal = 0.0;  // R_sup(x,x) <= d_sup(x) + tol
};

struct InequalityParams {
  int n_sources = 10;
  int n_targets = 10;
  std::uint64_t orbit_n = 1'000'000;
  std::uint64_t sample_n = 1'000'000;
  std::uint64_t burn_in_override = kUseSystemDefault;
  double tolerance = 0.15;
  double tail_fraction = 0.5;
  std::uint64_t seed = 1;
  int workers = 1;

  static constexpr std::uint64_t kUseSystemDefault = ~0ULL;
};

/// Samples sources (orbit starts) and targets from the reference measure,
/// estimates local dimension from an i.i.d. sample cloud of the measure,
/// and waiting-time slopes from per-source orbits.  Pairs whose tail window
/// contains a censored scale are excluded from the fractions and counted.
InequalityReport inequality_report(const SystemSpec& sys, const RadiusSchedule& sched,
                                   const InequalityParams& params);

}  // namespace recdim
