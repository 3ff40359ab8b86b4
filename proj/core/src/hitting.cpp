#include "recdim/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace recdim {

namespace {

struct RawDist {
  MetricTag metric;
  int dim;
  u128 yx, yy;

  RawDist(const SystemSpec& sys, const Point& y) : metric(sys.metric), dim(sys.dim) {
    if (y.dim != sys.dim) throw std::invalid_argument("target does not lie in the system space");
    yx = y.c[0].raw;
    yy = y.c[1].raw;
  }

  u128 operator()(const OrbitBuffer& orb, std::size_t i) const {
    if (dim == 2) {
      u128 dx = circle_dist_raw(orb.coords[2 * i], yx);
      u128 dy = circle_dist_raw(orb.coords[2 * i + 1], yy);
      return dx > dy ? dx : dy;
    }
    return metric == MetricTag::CircleWrap ? circle_dist_raw(orb.coords[i], yx)
                                           : interval_dist_raw(orb.coords[i], yx);
  }
};

}  // namespace

std::size_t HittingProfile::censored_count() const {
  return static_cast<std::size_t>(std::count(tau.begin(), tau.end(), kCensored));
}

HittingProfile hitting_single_pass(const OrbitBuffer& orb, const Point& y,
                                   const RadiusSchedule& sched, HitMode mode,
                                   MinDistanceRecord* record, std::uint64_t source_offset) {
  if (orb.n == 0) throw std::invalid_argument("empty orbit");
  if (source_offset >= orb.n) throw std::invalid_argument("source offset beyond the orbit");

  HittingProfile prof;
  prof.source = orb.point(source_offset);
  prof.target = y;
  prof.mode = mode;
  prof.k_min = sched.k_min;
  prof.k_max = sched.k_max;
  prof.n_max = orb.n - 1 - source_offset;
  prof.tau.assign(static_cast<std::size_t>(sched.count()), kCensored);

  RawDist dist(orb.system, y);
  const int K = sched.count();
  int kk = 0;
  u128 best = ~static_cast<u128>(0);
  std::uint64_t first = source_offset + (mode == HitMode::Dynamical ? 1 : 0);

  for (std::uint64_t i = first; i < orb.n; ++i) {
    u128 d = dist(orb, i);
    std::uint64_t n = i - source_offset;
    if (record && d < best) {
      best = d;
      record->entries.push_back({n, d});
    }
    if (kk < K && d < sched.threshold_raw(sched.k_at(kk))) {
      do {
        prof.tau[static_cast<std::size_t>(kk)] = n;
        ++kk;
      } while (kk < K && d < sched.threshold_raw(sched.k_at(kk)));
      if (kk == K && !record) break;
    }
  }
  return prof;
}

HittingProfile hitting_bruteforce(const OrbitBuffer& orb, const Point& y,
                                  const RadiusSchedule& sched, HitMode mode) {
  if (orb.n == 0) throw std::invalid_argument("empty orbit");
  HittingProfile prof;
  prof.source = orb.point(0);
  prof.target = y;
  prof.mode = mode;
  prof.k_min = sched.k_min;
  prof.k_max = sched.k_max;
  prof.n_max = orb.n - 1;
  prof.tau.assign(static_cast<std::size_t>(sched.count()), kCensored);

  RawDist dist(orb.system, y);
  std::uint64_t first = mode == HitMode::Dynamical ? 1 : 0;
  for (int k = sched.k_min; k <= sched.k_max; ++k) {
    u128 r = sched.threshold_raw(k);
    for (std::uint64_t i = first; i < orb.n; ++i) {
      if (dist(orb, i) < r) {
        prof.tau[static_cast<std::size_t>(k - sched.k_min)] = i;
        break;
      }
    }
  }
  return prof;
}

std::vector<HittingProfile> batch_hitting(const OrbitBuffer& orb,
                                          const std::vector<Point>& targets,
                                          const RadiusSchedule& sched, HitMode mode) {
  if (targets.empty()) throw std::invalid_argument("batch_hitting requires targets");
  const std::size_t T = targets.size();
  const int K = sched.count();

  std::vector<HittingProfile> profiles(T);
  std::vector<RawDist> dists;
  dists.reserve(T);
  for (std::size_t t = 0; t < T; ++t) {
    profiles[t].source = orb.point(0);
    profiles[t].target = targets[t];
    profiles[t].mode = mode;
    profiles[t].k_min = sched.k_min;
    profiles[t].k_max = sched.k_max;
    profiles[t].n_max = orb.n - 1;
    profiles[t].tau.assign(static_cast<std::size_t>(K), kCensored);
    dists.emplace_back(orb.system, targets[t]);
  }

  // Targets grid: once a target only waits on radii at or below the cell
  // size, hits can only come from the 3^dim cells around the orbit point.
  const int G = std::clamp(sched.k_min + 2, 2, std::min(sched.k_max, 12));
  const std::uint32_t cells_axis = 1u << G;
  const std::uint32_t axis_mask = cells_axis - 1;
  auto cell_of = [&](const Point& p) -> std::uint32_t {
    std::uint32_t cx = static_cast<std::uint32_t>(p.c[0].raw >> (128 - G));
    if (orb.dim == 1) return cx;
    std::uint32_t cy = static_cast<std::uint32_t>(p.c[1].raw >> (128 - G));
    return (cx << G) | cy;
  };

  std::size_t n_cells = orb.dim == 1 ? cells_axis : (static_cast<std::size_t>(cells_axis) << G);
  std::vector<std::vector<std::uint32_t>> bucket(n_cells);
  for (std::size_t t = 0; t < T; ++t) bucket[cell_of(targets[t])].push_back(static_cast<std::uint32_t>(t));

  std::vector<int> kk(T, 0);
  std::vector<std::uint32_t> coarse;  // targets whose next radius exceeds the cell size
  coarse.reserve(T);
  for (std::size_t t = 0; t < T; ++t)
    if (sched.k_min < G) coarse.push_back(static_cast<std::uint32_t>(t));
  std::size_t active = T;

  auto advance = [&](std::size_t t, u128 d, std::uint64_t n) {
    int& k_idx = kk[t];
    while (k_idx < K && d < sched.threshold_raw(sched.k_at(k_idx))) {
      profiles[t].tau[static_cast<std::size_t>(k_idx)] = n;
      ++k_idx;
      if (k_idx == K) --active;
    }
  };

  const bool wrap = orb.system.metric != MetricTag::EuclideanInterval;
  std::uint64_t first = mode == HitMode::Dynamical ? 1 : 0;
  for (std::uint64_t i = first; i < orb.n && active > 0; ++i) {
    // Coarse phase: every target is within reach while its radius exceeds
    // the cell size.
    for (std::size_t c = 0; c < coarse.size();) {
      std::uint32_t t = coarse[c];
      if (kk[t] < K) advance(t, dists[t](orb, i), i);
      if (kk[t] >= K || sched.k_at(kk[t]) >= G) {
        coarse[c] = coarse.back();
        coarse.pop_back();
      } else {
        ++c;
      }
    }
    // Fine phase: only the neighborhood of the orbit point.
    std::uint32_t cx = static_cast<std::uint32_t>(orb.coords[i * orb.dim] >> (128 - G));
    if (orb.dim == 1) {
      for (int dx = -1; dx <= 1; ++dx) {
        std::uint32_t c = wrap ? ((cx + cells_axis + static_cast<std::uint32_t>(dx)) & axis_mask)
                               : cx + static_cast<std::uint32_t>(dx);
        if (!wrap && c >= cells_axis) continue;
        for (std::uint32_t t : bucket[c])
          if (kk[t] < K && sched.k_at(kk[t]) >= G) advance(t, dists[t](orb, i), i);
      }
    } else {
      std::uint32_t cy = static_cast<std::uint32_t>(orb.coords[i * orb.dim + 1] >> (128 - G));
      for (int dx = -1; dx <= 1; ++dx) {
        std::uint32_t ncx = (cx + cells_axis + static_cast<std::uint32_t>(dx)) & axis_mask;
        for (int dy = -1; dy <= 1; ++dy) {
          std::uint32_t ncy = (cy + cells_axis + static_cast<std::uint32_t>(dy)) & axis_mask;
          for (std::uint32_t t : bucket[(static_cast<std::size_t>(ncx) << G) | ncy])
            if (kk[t] < K && sched.k_at(kk[t]) >= G) advance(t, dists[t](orb, i), i);
        }
      }
    }
  }
  return profiles;
}

HittingProfile hitting_single_pass_streamed(const SystemSpec& sys, std::uint64_t seed,
                                            std::uint64_t burn_in, std::uint64_t n,
                                            const Point& y, const RadiusSchedule& sched,
                                            HitMode mode) {
  HittingProfile prof;
  prof.target = y;
  prof.mode = mode;
  prof.k_min = sched.k_min;
  prof.k_max = sched.k_max;
  prof.n_max = n - 1;
  prof.tau.assign(static_cast<std::size_t>(sched.count()), kCensored);

  RawDist dist_to(sys, y);
  const int K = sched.count();
  int kk = 0;
  std::uint64_t skip = mode == HitMode::Dynamical ? 1 : 0;
  OrbitBuffer probe;  // one-point shim so RawDist can be reused
  probe.system = sys;
  probe.dim = sys.dim;
  probe.n = 1;
  probe.coords.assign(static_cast<std::size_t>(sys.dim), 0);

  visit_orbit_seeded(sys, seed, burn_in, n, [&](std::uint64_t i, u128 x, u128 yy) {
    if (i == 0) {
      probe.coords[0] = x;
      if (sys.dim == 2) probe.coords[1] = yy;
      prof.source = probe.point(0);
    }
    if (i < skip || kk >= K) return;
    probe.coords[0] = x;
    if (sys.dim == 2) probe.coords[1] = yy;
    u128 d = dist_to(probe, 0);
    while (kk < K && d < sched.threshold_raw(sched.k_at(kk))) {
      prof.tau[static_cast<std::size_t>(kk)] = i;
      ++kk;
    }
  });
  return prof;
}

ApproachScaling closest_approach_statistic(const MinDistanceRecord& rec, double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  ApproachScaling out;
  out.alpha = alpha;
  out.points.reserve(rec.entries.size());
  for (const auto& e : rec.entries) {
    double v = std::exp2(alpha * std::log2(static_cast<double>(e.n))) * e.dist();
    out.points.emplace_back(e.n, v);
  }
  if (out.points.empty()) {
    out.tail_min = std::numeric_limits<double>::infinity();
    return out;
  }
  std::size_t start = out.points.size() / 2;
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = start; i < out.points.size(); ++i) m = std::min(m, out.points[i].second);
  out.tail_min = m;
  return out;
}

}  // namespace recdim
