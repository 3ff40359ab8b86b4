// Command line front end: simulate orbits, compute hitting profiles and
// slope/dimension estimates, emit inequality and cover reports, and run the
// bundled acceptance suite.
//
// Exit codes: 0 success, 1 numeric failure (a check or computation failed),
// 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "recdim/acceptance.hpp"
#include "recdim/experiment.hpp"
#include "recdim/io_util.hpp"
#include "recdim/version.hpp"

namespace {

struct SystemOptions {
  recdim::SystemDecl decl;
  std::string terms_csv;

  void attach(CLI::App* cmd) {
    cmd->add_option("--system", decl.kind,
                    "rotation|doubling|logistic|cat_map|cantor_shift|constant_map");
    cmd->add_option("--angle-rule", decl.angle_rule, "golden|silver|power|explicit|decimal");
    cmd->add_option("--angle-exponent", decl.angle_exponent, "Diophantine type for power rule");
    cmd->add_option("--angle-depth", decl.angle_depth, "continued fraction truncation depth");
    cmd->add_option("--angle-value", decl.angle_value, "decimal angle in (0,1)");
    cmd->add_option("--angle-terms", terms_csv, "comma separated partial quotients");
  }

  recdim::SystemSpec build() {
    if (!terms_csv.empty()) {
      std::istringstream in(terms_csv);
      std::string tok;
      while (std::getline(in, tok, ','))
        decl.angle_terms.push_back(std::stoull(tok));
    }
    return recdim::make_system(decl);
  }
};

recdim::ExperimentConfig config_from(const std::string& config_path) {
  return recdim::load_config_file(config_path);
}

int run_config_experiment(const std::string& config_path, recdim::ExperimentKind kind,
                          const std::string& out_dir, int workers) {
  auto cfg = config_from(config_path);
  cfg.experiment = kind;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (workers > 0) cfg.workers = workers;
  auto manifest = recdim::run_experiment(cfg);
  std::printf("wrote %zu output files to %s (config %s, %.2fs)\n", manifest.outputs.size(),
              cfg.out_dir.c_str(), manifest.config_hash.c_str(), manifest.seconds);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"waiting-time and recurrence estimators for local dimension"};
  app.set_version_flag("--version", recdim::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir, cache_path, targets_path;
  int workers = 0;

  auto* simulate = app.add_subcommand("simulate", "generate an orbit and write a binary cache");
  SystemOptions sim_sys;
  sim_sys.attach(simulate);
  std::string sim_n = "1e6";
  std::uint64_t sim_seed = 1, sim_burn = 0;
  simulate->add_option("--n", sim_n, "orbit length (1e6 shorthand accepted)");
  simulate->add_option("--seed", sim_seed, "orbit seed");
  simulate->add_option("--burn-in", sim_burn, "discarded prefix length");
  simulate->add_option("--out", cache_path, "cache file path")->required();

  auto* hit = app.add_subcommand("hit", "first-entrance times for targets, CSV output");
  SystemOptions hit_sys;
  hit_sys.attach(hit);
  double hit_x = -1.0;
  std::string hit_n = "1e6";
  std::uint64_t hit_seed = 1;
  int hit_kmin = 4, hit_kmax = 14;
  std::string hit_out = "hitting.csv";
  std::string hit_targets_inline, hit_cache;
  hit->add_option("--cache", hit_cache, "orbit cache written by simulate");
  hit->add_option("--x", hit_x, "source point (decimal; omit to sample from the measure)");
  hit->add_option("--targets", targets_path, "CSV/text file with one decimal target per line");
  hit->add_option("--target-list", hit_targets_inline, "comma separated decimal targets");
  hit->add_option("--kmin", hit_kmin, "coarsest dyadic scale");
  hit->add_option("--kmax", hit_kmax, "finest dyadic scale");
  hit->add_option("--n", hit_n, "orbit length (1e6 shorthand accepted)");
  hit->add_option("--seed", hit_seed, "seed");
  hit->add_option("--out", hit_out, "output CSV path");

  auto* estimate = app.add_subcommand("estimate", "slope and dimension estimates from a config");
  estimate->add_option("--config", config_path, "experiment config file")->required();
  estimate->add_option("--out-dir", out_dir, "output directory override");
  estimate->add_option("--workers", workers, "worker threads");

  auto* report = app.add_subcommand("report", "inequality/cover reports from a config");
  report->add_option("--config", config_path, "experiment config file")->required();
  report->add_option("--out-dir", out_dir, "output directory override");
  report->add_option("--workers", workers, "worker threads");

  auto* suite = app.add_subcommand("suite", "run the acceptance criteria and print a table");
  int suite_workers = 1;
  int suite_criterion = 0;
  suite->add_option("--workers", suite_workers, "worker threads");
  suite->add_option("--criterion", suite_criterion, "run a single criterion (1..10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (simulate->parsed()) {
      auto sys = sim_sys.build();
      auto orb = recdim::generate_orbit_seeded(sys, sim_seed, sim_burn,
                                               recdim::parse_count("--n", sim_n));
      recdim::write_orbit_cache(orb, cache_path);
      std::printf("wrote %llu points (%s) to %s\n",
                  static_cast<unsigned long long>(orb.n), sys.name.c_str(), cache_path.c_str());
      return 0;
    }
    if (hit->parsed()) {
      auto sys = hit_sys.build();
      recdim::RadiusSchedule sched(hit_kmin, hit_kmax);
      recdim::OrbitBuffer orb;
      if (!hit_cache.empty()) {
        orb = recdim::read_orbit_cache(hit_cache, sys);
      } else if (hit_x >= 0.0) {
        if (sys.kind == recdim::SystemKind::CantorShift ||
            sys.kind == recdim::SystemKind::CatMap)
          throw std::invalid_argument(
              "--x takes a single decimal; this system's starts come from --seed sampling");
        recdim::Point start = sys.space == recdim::Space::Interval
                                  ? recdim::Point::interval(hit_x)
                                  : recdim::Point::circle(recdim::FixedPointAngle::from_double(hit_x));
        std::uint64_t len = recdim::parse_count("--n", hit_n);
        // the doubling map consumes its start's bits; continue them with the
        // seeded stream so decimal initial data admits long orbits
        orb = sys.kind == recdim::SystemKind::Doubling
                  ? recdim::generate_orbit_prefixed(sys, start, hit_seed, 0, len)
                  : recdim::generate_orbit(sys, start, 0, len);
      } else {
        orb = recdim::generate_orbit_seeded(sys, hit_seed, 0, recdim::parse_count("--n", hit_n));
      }
      std::vector<recdim::Point> targets;
      auto push_target = [&](const std::string& text) {
        auto colon = text.find(':');
        if (sys.dim == 2) {
          if (colon == std::string::npos)
            throw std::invalid_argument("2D targets use x:y, got '" + text + "'");
          targets.push_back(recdim::Point::torus(
              recdim::FixedPointAngle::from_double(std::stod(text.substr(0, colon))),
              recdim::FixedPointAngle::from_double(std::stod(text.substr(colon + 1)))));
          return;
        }
        double v = std::stod(text);
        targets.push_back(sys.space == recdim::Space::Interval
                              ? recdim::Point::interval(v)
                              : recdim::Point::circle(recdim::FixedPointAngle::from_double(v)));
      };
      if (!targets_path.empty()) {
        std::istringstream in(recdim::read_file(targets_path));
        std::string line;
        while (std::getline(in, line)) {
          if (line.empty() || line[0] == '#') continue;
          push_target(line);
        }
      }
      if (!hit_targets_inline.empty()) {
        std::istringstream in(hit_targets_inline);
        std::string tok;
        while (std::getline(in, tok, ',')) push_target(tok);
      }
      if (targets.empty()) throw std::invalid_argument("hit: no targets given");
      auto profiles = recdim::batch_hitting(orb, targets, sched);
      recdim::write_file(hit_out, recdim::hitting_csv(profiles, sys.name));
      std::printf("wrote %zu profiles x %d scales to %s\n", profiles.size(), sched.count(),
                  hit_out.c_str());
      return 0;
    }
    if (estimate->parsed()) {
      auto cfg = config_from(config_path);
      if (cfg.experiment != recdim::ExperimentKind::Hitting &&
          cfg.experiment != recdim::ExperimentKind::Dimension)
        throw std::invalid_argument(
            "estimate runs hitting/dimension configs; use report for this config");
      return run_config_experiment(config_path, cfg.experiment, out_dir, workers);
    }
    if (report->parsed()) {
      auto cfg = config_from(config_path);
      if (cfg.experiment != recdim::ExperimentKind::Inequality &&
          cfg.experiment != recdim::ExperimentKind::Cover &&
          cfg.experiment != recdim::ExperimentKind::Properties)
        throw std::invalid_argument(
            "report runs inequality/cover/properties configs; use estimate for this config");
      return run_config_experiment(config_path, cfg.experiment, out_dir, workers);
    }
    if (suite->parsed()) {
      if (suite_criterion > 0) {
        auto r = recdim::run_criterion(suite_criterion, suite_workers);
        std::printf("%s\n", recdim::format_criterion_line(r).c_str());
        return r.pass ? 0 : 1;
      }
      auto results = recdim::run_acceptance_suite(true, suite_workers);
      bool all = true;
      for (const auto& r : results) all = all && r.pass;
      std::printf("%s\n", all ? "suite: all criteria passed" : "suite: some criteria FAILED");
      return all ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
