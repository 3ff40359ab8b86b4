#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "recdim/orbit.hpp"
#include "recdim/schedule.hpp"

namespace recdim {

inline constexpr std::uint64_t kCensored = std::numeric_limits<std::uint64_t>::max();

/// Dynamical mode: candidate times start at n = 1 (first entrance of the
/// forward orbit).  Sequence mode: n = 0 is a candidate (plain sequences).
enum class HitMode : std::uint8_t { Dynamical, Sequence };

/// Waiting times tau at each dyadic radius for one (source, target) pair.
/// tau is nondecreasing in k wherever observed; unobserved scales are
/// censored at n_max (treated as +infinity downstream).
struct HittingProfile {
  Point source;
  Point target;
  HitMode mode = HitMode::Dynamical;
  int k_min = 0, k_max = 0;
  std::uint64_t n_max = 0;
  std::vector<std::uint64_t> tau;  // per k; kCensored when not hit

  bool censored(int k) const { return tau[static_cast<std::size_t>(k - k_min)] == kCensored; }
  std::uint64_t tau_at(int k) const { return tau[static_cast<std::size_t>(k - k_min)]; }
  std::size_t censored_count() const;
};

/// Running minimum distance record: (n, m_n) at each strict decrease of
/// m_n = min_{1<=i<=n} d(T^i x, y).
struct MinDistanceRecord {
  struct Entry {
    std::uint64_t n;
    u128 dist_raw;
    double dist() const { return raw_to_double(dist_raw); }
  };
  std::vector<Entry> entries;
};

/// One pass over the orbit maintaining the current best distance; fills tau
/// for every newly satisfied radius, leaving the rest censored.
/// source_offset treats points[source_offset] as the source, with candidate
/// times renumbered from it (used for the shift-invariance property checks).
HittingProfile hitting_single_pass(const OrbitBuffer& orb, const Point& y,
                                   const RadiusSchedule& sched,
                                   HitMode mode = HitMode::Dynamical,
                                   MinDistanceRecord* record = nullptr,
                                   std::uint64_t source_offset = 0);

/// Independent oracle: per-radius scan from the first candidate time.  Small
/// orbits only; must agree with hitting_single_pass exactly.
HittingProfile hitting_bruteforce(const OrbitBuffer& orb, const Point& y,
                                  const RadiusSchedule& sched,
                                  HitMode mode = HitMode::Dynamical);

/// One orbit pass updating every target: targets still waiting on coarse
/// radii are checked against every point; once a target only needs radii at
/// or below the cell size it can only be hit from the 3^dim neighboring
/// cells of the current point (exact under the max metric), so only those
/// are examined.  Output equals per-target hitting_single_pass exactly.
std::vector<HittingProfile> batch_hitting(const OrbitBuffer& orb,
                                          const std::vector<Point>& targets,
                                          const RadiusSchedule& sched,
                                          HitMode mode = HitMode::Dynamical);

/// Streaming single pass over a seeded orbit (no stored buffer).
HittingProfile hitting_single_pass_streamed(const SystemSpec& sys, std::uint64_t seed,
                                            std::uint64_t burn_in, std::uint64_t n,
                                            const Point& y, const RadiusSchedule& sched,
                                            HitMode mode = HitMode::Dynamical);

/// The transformed record (n, n^alpha * m_n) plus its minimum over the tail
/// (last half of entries).  Diverging tail minima indicate alpha above the
/// reciprocal lower dimension at the target.
struct ApproachScaling {
  double alpha = 0.0;
  std::vector<std::pair<std::uint64_t, double>> points;
  double tail_min = 0.0;
};
ApproachScaling closest_approach_statistic(const MinDistanceRecord& rec, double alpha);

}  // namespace recdim
