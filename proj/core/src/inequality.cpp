#include "recdim/inequality.hpp"

#include <cmath>

#include "recdim/rng.hpp"
#include "recdim/worker_pool.hpp"

namespace recdim {

namespace {

int grid_level_for(const RadiusSchedule& sched, int dim) {
  int level = sched.k_max;
  int cap = dim == 1 ? 22 : 11;
  return std::min(level, cap);
}

}  // namespace

InequalityReport inequality_report(const SystemSpec& sys, const RadiusSchedule& sched,
                                   const InequalityParams& params) {
  if (params.n_sources < 1 || params.n_targets < 1)
    throw std::invalid_argument("need at least one source and one target");

  InequalityReport rep;
  rep.system = sys.name;
  rep.measure_invariant = sys.measure_invariant;
  rep.tolerance = params.tolerance;
  rep.tail_fraction = params.tail_fraction;
  rep.k_min = sched.k_min;
  rep.k_max = sched.k_max;
  rep.orbit_n = params.orbit_n;
  rep.sample_n = params.sample_n;
  rep.seed = params.seed;

  std::uint64_t burn = params.burn_in_override == InequalityParams::kUseSystemDefault
                           ? sys.default_burn_in
                           : params.burn_in_override;

  // Local dimension of the reference measure from an i.i.d. sample cloud
  // (matches the measure itself even when the map does not preserve it).
  OrbitBuffer cloud = sample_cloud(sys, params.sample_n, substream_seed(params.seed, "cloud"));
  GridIndex cloud_idx = build_grid_index(cloud, grid_level_for(sched, sys.dim));

  std::vector<Point> targets;
  targets.reserve(static_cast<std::size_t>(params.n_targets));
  for (int t = 0; t < params.n_targets; ++t)
    targets.push_back(sample_one(sys, substream_seed(params.seed, "targets", static_cast<std::uint64_t>(t))));

  rep.target_dims.resize(targets.size());
  parallel_for(targets.size(), params.workers, [&](std::size_t t) {
    auto est = dimension_estimate(cloud, cloud_idx, targets[t], sched, params.tail_fraction);
    rep.target_dims[t] = {static_cast<int>(t), targets[t], est.sup_proxy, est.inf_proxy,
                          est.ols_slope};
  });

  rep.pairs.resize(targets.size() * static_cast<std::size_t>(params.n_sources));
  rep.diagonal.resize(static_cast<std::size_t>(params.n_sources));
  rep.source_dims.resize(static_cast<std::size_t>(params.n_sources));

  OrbitBuffer orb;
  for (int s = 0; s < params.n_sources; ++s) {
    generate_orbit_seeded_into(
        orb, sys, substream_seed(params.seed, "orbit", static_cast<std::uint64_t>(s)), burn,
        params.orbit_n);
    Point source = orb.point(0);

    auto src_est = dimension_estimate(cloud, cloud_idx, source, sched, params.tail_fraction);
    rep.source_dims[static_cast<std::size_t>(s)] = {s, source, src_est.sup_proxy,
                                                    src_est.inf_proxy, src_est.ols_slope};

    // Off-diagonal profiles; targets are independent given the orbit.
    parallel_for(targets.size(), params.workers, [&](std::size_t t) {
      auto prof = hitting_single_pass(orb, targets[t], sched);
      auto est = slope_from_profile(prof, params.tail_fraction);
      auto& pr = rep.pairs[static_cast<std::size_t>(s) * targets.size() + t];
      pr.source = s;
      pr.target = static_cast<int>(t);
      pr.infinite = est.infinite;
      pr.excluded = est.infinite || !est.window_complete();
      if (!pr.excluded) {
        pr.r_sup = est.sup_proxy;
        pr.r_inf = est.inf_proxy;
        pr.r_ols = est.ols_slope;
        const auto& d = rep.target_dims[t];
        pr.lower_ok = pr.r_inf >= d.d_inf - params.tolerance;
        pr.upper_ok = pr.r_sup >= d.d_sup - params.tolerance;
      }
    });

    // Diagonal: the return-time profile of the source itself.
    auto self_prof = hitting_single_pass(orb, source, sched);
    auto self_est = slope_from_profile(self_prof, params.tail_fraction);
    auto& diag = rep.diagonal[static_cast<std::size_t>(s)];
    diag.source = s;
    diag.excluded = self_est.infinite || !self_est.window_complete();
    if (!diag.excluded) {
      diag.r_sup = self_est.sup_proxy;
      diag.r_inf = self_est.inf_proxy;
      diag.upper_ok = diag.r_sup <= src_est.sup_proxy + params.tolerance;
    }
  }

  std::size_t included = 0, lower_ok = 0, upper_ok = 0;
  for (const auto& pr : rep.pairs) {
    if (pr.excluded) {
      ++rep.excluded_pairs;
      continue;
    }
    ++included;
    lower_ok += pr.lower_ok ? 1 : 0;
    upper_ok += pr.upper_ok ? 1 : 0;
  }
  rep.frac_lower = included ? static_cast<double>(lower_ok) / included : 0.0;
  rep.frac_upper = included ? static_cast<double>(upper_ok) / included : 0.0;

  std::size_t diag_included = 0, diag_ok = 0;
  for (const auto& d : rep.diagonal) {
    if (d.excluded) {
      ++rep.excluded_diagonal;
      continue;
    }
    ++diag_included;
    diag_ok += d.upper_ok ? 1 : 0;
  }
  rep.frac_diagonal = diag_included ? static_cast<double>(diag_ok) / diag_included : 0.0;
  return rep;
}

}  // namespace recdim
