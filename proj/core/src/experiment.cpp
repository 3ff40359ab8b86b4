#include "recdim/experiment.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <sstream>

#include "recdim/io_util.hpp"
#include "recdim/rng.hpp"
#include "recdim/version.hpp"
#include "recdim/worker_pool.hpp"

namespace recdim {

using json = nlohmann::ordered_json;

namespace {

json point_json(const Point& p) {
  json j;
  j["x"] = p.x();
  if (p.dim == 2) j["y"] = p.y();
  return j;
}

std::uint64_t effective_burn(const ExperimentConfig& cfg) {
  return cfg.burn_in == ~0ULL ? cfg.system.default_burn_in : cfg.burn_in;
}

std::vector<Point> draw_targets(const ExperimentConfig& cfg) {
  std::vector<Point> targets;
  targets.reserve(static_cast<std::size_t>(cfg.targets));
  for (int t = 0; t < cfg.targets; ++t)
    targets.push_back(
        sample_one(cfg.system, substream_seed(cfg.seed, "targets", static_cast<std::uint64_t>(t))));
  return targets;
}

/// Grid of 2^k evenly spaced circle targets for cover experiments.
std::vector<Point> grid_targets(int k) {
  std::vector<Point> out;
  std::size_t n = static_cast<std::size_t>(1) << k;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(Point::circle(FixedPointAngle{static_cast<u128>(i) << (128 - k)}));
  return out;
}

}  // namespace

std::string hitting_csv(const std::vector<HittingProfile>& profiles, const std::string& system) {
  std::ostringstream os;
  os << "system,source,target,k,tau,n_max\n";
  for (const auto& p : profiles) {
    for (int k = p.k_min; k <= p.k_max; ++k) {
      os << system << "," << p.source.str() << "," << p.target.str() << "," << k << ",";
      if (p.censored(k))
        os << "censored";
      else
        os << p.tau_at(k);
      os << "," << p.n_max << "\n";
    }
  }
  return os.str();
}

std::string slopes_csv(const std::vector<std::pair<std::string, SlopeEstimate>>& rows) {
  std::ostringstream os;
  os << "label,quantity,k,s_k\n";
  for (const auto& [label, est] : rows) {
    const char* q = est.kind == QuantityKind::Recurrence ? "R" : "d";
    for (const auto& [k, s] : est.per_scale_slopes)
      os << label << "," << q << "," << k << "," << format_double(s) << "\n";
  }
  return os.str();
}

namespace {

json estimate_json(const SlopeEstimate& e) {
  json j;
  j["quantity"] = e.kind == QuantityKind::Recurrence ? "R" : "d";
  j["infinite"] = e.infinite;
  j["sup"] = e.sup_proxy;
  j["inf"] = e.inf_proxy;
  j["ols"] = e.ols_slope;
  j["ols_r2"] = e.ols_r2;
  j["window"] = {e.window_lo, e.window_hi};
  j["censored_scales"] = e.censored_scales;
  return j;
}

}  // namespace

namespace {

std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

/// Aligned-column rendering for reading at the terminal; the JSON carries
/// the same content for machines.
std::string inequality_text(const InequalityReport& r) {
  std::ostringstream os;
  os << "system " << r.system << (r.measure_invariant ? " (invariant measure)" : " (measure NOT invariant)")
     << ", scales 2^-" << r.k_min << "..2^-" << r.k_max << ", orbit n=" << r.orbit_n
     << ", samples n=" << r.sample_n << ", tol=" << format_double(r.tolerance) << "\n";
  os << "fractions: lower pairs " << num(r.frac_lower) << ", upper pairs " << num(r.frac_upper)
     << ", diagonal " << num(r.frac_diagonal) << "  (excluded pairs " << r.excluded_pairs
     << ", excluded diagonal " << r.excluded_diagonal << ")\n\n";
  os << pad("src", 5) << pad("tgt", 5) << pad("R_sup", 9) << pad("R_inf", 9) << pad("d_sup", 9)
     << pad("d_inf", 9) << pad("lower", 7) << pad("upper", 7) << "\n";
  for (const auto& p : r.pairs) {
    if (p.excluded) {
      os << pad(std::to_string(p.source), 5) << pad(std::to_string(p.target), 5)
         << (p.infinite ? "infinite (censored at every scale)" : "excluded (censored tail scale)")
         << "\n";
      continue;
    }
    const auto& d = r.target_dims[static_cast<std::size_t>(p.target)];
    os << pad(std::to_string(p.source), 5) << pad(std::to_string(p.target), 5)
       << pad(num(p.r_sup), 9) << pad(num(p.r_inf), 9) << pad(num(d.d_sup), 9)
       << pad(num(d.d_inf), 9) << pad(p.lower_ok ? "ok" : "FAIL", 7)
       << pad(p.upper_ok ? "ok" : "FAIL", 7) << "\n";
  }
  os << "\n" << pad("src", 5) << pad("R_sup(x,x)", 12) << pad("d_sup(x)", 10) << pad("diag", 6)
     << "\n";
  for (const auto& d : r.diagonal) {
    if (d.excluded) {
      os << pad(std::to_string(d.source), 5) << "excluded\n";
      continue;
    }
    os << pad(std::to_string(d.source), 5) << pad(num(d.r_sup), 12)
       << pad(num(r.source_dims[static_cast<std::size_t>(d.source)].d_sup), 10)
       << pad(d.upper_ok ? "ok" : "FAIL", 6) << "\n";
  }
  return os.str();
}

std::string cover_text(const CoverEstimate& c) {
  std::ostringstream os;
  os << "cover bound: h=" << format_double(c.h) << " eps=" << format_double(c.epsilon)
     << " d=" << format_double(c.d) << " k0=" << c.k0 << " grid 2^-" << c.grid_k << "\n";
  os << "tail bound: analytic " << format_double(c.analytic_tail_bound) << ", direct "
     << format_double(c.direct_tail_sum) << "\n";
  os << "|Y_h| = " << c.y_h_size << " (" << c.y_h_insufficient
     << " grid points had too few observed scales), covered fraction at deepest scale "
     << num(c.covered_fraction_deepest) << "\n\n";
  os << pad("k", 4) << pad("mass_bound", 14) << pad("ball_budget", 13) << pad("members", 9)
     << pad("covered", 9) << "\n";
  for (const auto& row : c.per_scale)
    os << pad(std::to_string(row.k), 4) << pad(format_double(row.mass_bound), 14)
       << pad(std::to_string(row.ball_budget), 13) << pad(std::to_string(row.members), 9)
       << pad(std::to_string(row.covered), 9) << "\n";
  return os.str();
}

std::string inequality_json(const InequalityReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["system"] = r.system;
  j["measure_invariant"] = r.measure_invariant;
  j["expectation"] = r.measure_invariant
                         ? "lower inequality holds a.e. for invariant measures"
                         : "measure not invariant: lower inequality may fail at some targets";
  j["tolerance"] = r.tolerance;
  j["tail_fraction"] = r.tail_fraction;
  j["k_min"] = r.k_min;
  j["k_max"] = r.k_max;
  j["orbit_n"] = r.orbit_n;
  j["sample_n"] = r.sample_n;
  j["seed"] = r.seed;
  j["fractions"] = {{"lower_pairs", r.frac_lower},
                    {"upper_pairs", r.frac_upper},
                    {"diagonal_pass", r.frac_diagonal}};
  j["excluded_pairs"] = r.excluded_pairs;
  j["excluded_diagonal"] = r.excluded_diagonal;

  json targets = json::array();
  for (const auto& t : r.target_dims) {
    json e = point_json(t.point);
    e["index"] = t.index;
    e["d_sup"] = t.d_sup;
    e["d_inf"] = t.d_inf;
    e["d_ols"] = t.d_ols;
    targets.push_back(std::move(e));
  }
  j["targets"] = std::move(targets);

  json pairs = json::array();
  for (const auto& p : r.pairs) {
    json e;
    e["source"] = p.source;
    e["target"] = p.target;
    e["excluded"] = p.excluded;
    e["infinite"] = p.infinite;
    if (!p.excluded) {
      e["r_sup"] = p.r_sup;
      e["r_inf"] = p.r_inf;
      e["r_ols"] = p.r_ols;
      e["lower_ok"] = p.lower_ok;
      e["upper_ok"] = p.upper_ok;
    }
    pairs.push_back(std::move(e));
  }
  j["pairs"] = std::move(pairs);

  json diag = json::array();
  for (const auto& d : r.diagonal) {
    json e;
    e["source"] = d.source;
    e["excluded"] = d.excluded;
    if (!d.excluded) {
      e["r_sup"] = d.r_sup;
      e["r_inf"] = d.r_inf;
      e["upper_ok"] = d.upper_ok;
    }
    diag.push_back(std::move(e));
  }
  j["diagonal"] = std::move(diag);
  return j.dump(2) + "\n";
}

std::string cover_json(const CoverEstimate& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["h"] = c.h;
  j["epsilon"] = c.epsilon;
  j["d"] = c.d;
  j["k0"] = c.k0;
  j["grid_k"] = c.grid_k;
  j["analytic_tail_bound"] = c.analytic_tail_bound;
  j["direct_tail_sum"] = c.direct_tail_sum;
  j["y_h_size"] = c.y_h_size;
  j["y_h_insufficient"] = c.y_h_insufficient;
  j["covered_fraction_deepest"] = c.covered_fraction_deepest;
  json per = json::array();
  for (const auto& row : c.per_scale) {
    per.push_back({{"k", row.k},
                   {"mass_bound", row.mass_bound},
                   {"ball_budget", row.ball_budget},
                   {"members", row.members},
                   {"covered", row.covered}});
  }
  j["per_scale"] = std::move(per);
  return j.dump(2) + "\n";
}

std::string properties_json(const std::vector<IndicatorPropertyReport>& reports,
                            const HolderCheckResult& holder) {
  json j;
  j["schema_version"] = kSchemaVersion;
  json sys = json::array();
  for (const auto& r : reports) {
    sys.push_back({{"system", r.system},
                   {"pairs", r.n_pairs},
                   {"tolerance", r.tolerance},
                   {"k_min", r.k_min},
                   {"k_max", r.k_max},
                   {"max_shift_diff", r.max_shift_diff},
                   {"shift_bound", r.shift_bound},
                   {"shift_pairs", r.shift_pairs},
                   {"shift_ok", r.shift_ok()},
                   {"lipschitz_fraction", r.lipschitz_fraction},
                   {"lipschitz_pairs", r.lipschitz_pairs},
                   {"excluded_pairs", r.excluded_pairs}});
  }
  j["systems"] = std::move(sys);
  j["holder_square_map"] = {{"alpha", holder.alpha},
                            {"r_xy", holder.r_xy},
                            {"r_x_ty", holder.r_x_ty},
                            {"pass", holder.pass}};
  return j.dump(2) + "\n";
}

std::vector<std::pair<std::string, std::string>> render_experiment(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  std::uint64_t burn = effective_burn(cfg);
  HitMode mode = cfg.sequence_mode ? HitMode::Sequence : HitMode::Dynamical;

  switch (cfg.experiment) {
    case ExperimentKind::Hitting: {
      std::vector<Point> targets = draw_targets(cfg);
      std::vector<HittingProfile> all;
      std::vector<std::pair<std::string, SlopeEstimate>> slopes;
      for (int s = 0; s < cfg.sources; ++s) {
        OrbitBuffer orb = generate_orbit_seeded(
            cfg.system, substream_seed(cfg.seed, "orbit", static_cast<std::uint64_t>(s)), burn,
            cfg.n);
        std::vector<HittingProfile> profs(targets.size());
        parallel_for(targets.size(), cfg.workers, [&](std::size_t t) {
          profs[t] = hitting_single_pass(orb, targets[t], cfg.schedule, mode);
        });
        for (std::size_t t = 0; t < profs.size(); ++t) {
          std::string label = "s" + std::to_string(s) + ":t" + std::to_string(t);
          try {
            slopes.emplace_back(label, slope_from_profile(profs[t], cfg.tail_fraction));
          } catch (const InsufficientScalesError&) {
            // profile kept in the CSV; slope omitted
          }
          all.push_back(std::move(profs[t]));
        }
      }
      out.emplace_back("hitting.csv", hitting_csv(all, cfg.system.name));
      out.emplace_back("slopes.csv", slopes_csv(slopes));
      break;
    }
    case ExperimentKind::Dimension: {
      OrbitBuffer cloud = sample_cloud(cfg.system, cfg.sample_n, substream_seed(cfg.seed, "cloud"));
      GridIndex idx = build_grid_index(cloud, std::min(cfg.schedule.k_max, cfg.system.dim == 1 ? 22 : 11));
      std::vector<Point> targets = draw_targets(cfg);
      std::vector<std::pair<std::string, SlopeEstimate>> rows(targets.size());
      parallel_for(targets.size(), cfg.workers, [&](std::size_t t) {
        rows[t] = {"t" + std::to_string(t),
                   dimension_estimate(cloud, idx, targets[t], cfg.schedule, cfg.tail_fraction)};
      });
      json j;
      j["schema_version"] = kSchemaVersion;
      j["system"] = cfg.system.name;
      j["sample_n"] = cfg.sample_n;
      json arr = json::array();
      for (std::size_t t = 0; t < rows.size(); ++t) {
        json e = point_json(targets[t]);
        e["estimate"] = estimate_json(rows[t].second);
        arr.push_back(std::move(e));
      }
      j["targets"] = std::move(arr);
      out.emplace_back("dimension.json", j.dump(2) + "\n");
      out.emplace_back("slopes.csv", slopes_csv(rows));
      break;
    }
    case ExperimentKind::Inequality: {
      InequalityParams p;
      p.n_sources = cfg.sources;
      p.n_targets = cfg.targets;
      p.orbit_n = cfg.n;
      p.sample_n = cfg.sample_n;
      p.burn_in_override = cfg.burn_in;
      p.tolerance = cfg.tolerance;
      p.tail_fraction = cfg.tail_fraction;
      p.seed = cfg.seed;
      p.workers = cfg.workers;
      auto rep = inequality_report(cfg.system, cfg.schedule, p);
      out.emplace_back("inequality.json", inequality_json(rep));
      out.emplace_back("inequality.txt", inequality_text(rep));
      break;
    }
    case ExperimentKind::Cover: {
      OrbitBuffer orb = generate_orbit_seeded(cfg.system, substream_seed(cfg.seed, "orbit", 0),
                                              burn, cfg.n);
      auto targets = grid_targets(cfg.grid_k);
      auto profiles = batch_hitting(orb, targets, cfg.schedule, mode);
      auto cov = cover_dimension_bound(profiles, cfg.cover_h, cfg.cover_epsilon, cfg.cover_d,
                                       cfg.cover_k0, cfg.tail_fraction);
      out.emplace_back("cover.json", cover_json(cov));
      out.emplace_back("cover.txt", cover_text(cov));
      break;
    }
    case ExperimentKind::Properties: {
      IndicatorPropertyParams p;
      p.n_pairs = cfg.sources;
      p.orbit_n = cfg.n;
      p.tolerance = cfg.tolerance;
      p.tail_fraction = cfg.tail_fraction;
      p.seed = cfg.seed;
      p.workers = cfg.workers;
      std::vector<IndicatorPropertyReport> reports = {
          indicator_properties_check(cfg.system, cfg.schedule, p)};
      out.emplace_back("properties.json",
                       properties_json(reports, holder_square_map_check(cfg.tolerance)));
      break;
    }
  }
  return out;
}

RunManifest run_experiment(const ExperimentConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.artifact_version = kVersion;
  manifest.created_utc = now_utc_iso8601();
  {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(cfg.config_hash()));
    manifest.config_hash = buf;
  }

  auto outputs = render_experiment(cfg);
  ensure_dir(cfg.out_dir);
  for (const auto& [name, payload] : outputs) {
    write_file(cfg.out_dir + "/" + name, payload);
    manifest.outputs.push_back({name, payload.size(), fnv64_hex(payload)});
  }
  manifest.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json j;
  j["schema_version"] = kSchemaVersion;
  j["artifact_version"] = manifest.artifact_version;
  j["config_hash"] = manifest.config_hash;
  j["created_utc"] = manifest.created_utc;
  j["seconds"] = manifest.seconds;
  json files = json::array();
  for (const auto& f : manifest.outputs)
    files.push_back({{"name", f.name}, {"bytes", f.bytes}, {"fnv64", f.fnv64}});
  j["outputs"] = std::move(files);
  write_file(cfg.out_dir + "/manifest.json", j.dump(2) + "\n");
  return manifest;
}

}  // namespace recdim
