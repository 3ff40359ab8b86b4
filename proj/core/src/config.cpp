#include "recdim/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "recdim/io_util.hpp"
#include "recdim/rng.hpp"

namespace recdim {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  return parse_count(key, v);
}

double parse_f64(const std::string& key, const std::string& v) {
  try {
    return std::stod(v);
  } catch (...) {
    throw std::invalid_argument("config key '" + key + "' expects a number, got '" + v + "'");
  }
}

}  // namespace

std::uint64_t parse_count(const std::string& label, const std::string& value) {
  try {
    // Accepts 1e6-style shorthand for lengths.
    if (value.find_first_of("eE.") != std::string::npos) {
      double d = std::stod(value);
      if (d < 0 || d != std::floor(d) || d > 9.2e18)
        throw std::invalid_argument("not an integer");
      return static_cast<std::uint64_t>(d);
    }
    return std::stoull(value);
  } catch (...) {
    throw std::invalid_argument("'" + label + "' expects an integer, got '" + value + "'");
  }
}

SystemSpec make_system(const SystemDecl& decl) {
  if (decl.kind == "rotation") {
    ContinuedFraction cf;
    int depth = decl.angle_depth;
    if (decl.angle_rule == "golden") {
      cf = ContinuedFraction::golden();
    } else if (decl.angle_rule == "silver") {
      cf = ContinuedFraction::silver();
    } else if (decl.angle_rule == "power") {
      cf = ContinuedFraction::power(decl.angle_exponent);
      // quadratic growth reaches 128 fractional bits within a dozen terms
      depth = std::min(depth, 24);
    } else if (decl.angle_rule == "explicit") {
      cf = ContinuedFraction::from_terms(decl.angle_terms);
      depth = std::min<int>(depth, static_cast<int>(decl.angle_terms.size()));
    } else if (decl.angle_rule == "decimal") {
      if (decl.angle_value <= 0.0 || decl.angle_value >= 1.0)
        throw std::invalid_argument("decimal rotation angle must lie in (0,1)");
      return make_rotation(FixedPointAngle::from_double(decl.angle_value),
                           "decimal" + format_double(decl.angle_value));
    } else {
      throw std::invalid_argument("unknown angle_rule: " + decl.angle_rule);
    }
    return make_rotation(cf, depth);
  }
  if (decl.kind == "doubling") return make_doubling();
  if (decl.kind == "logistic") return make_logistic();
  if (decl.kind == "cat_map") return make_cat_map();
  if (decl.kind == "cantor_shift") return make_cantor_shift();
  if (decl.kind == "constant_map") return noninvariant_counterexample();
  throw std::invalid_argument("unknown system kind: " + decl.kind);
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " is not key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " has an empty key or value");
    if (!kv.emplace(key, val).second)
      throw std::invalid_argument("duplicate config key: " + key);
  }

  ExperimentConfig cfg;
  SystemDecl decl;
  int k_min = cfg.schedule.k_min, k_max = cfg.schedule.k_max;

  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto v = take("experiment")) {
    if (*v == "hitting") cfg.experiment = ExperimentKind::Hitting;
    else if (*v == "dimension") cfg.experiment = ExperimentKind::Dimension;
    else if (*v == "inequality") cfg.experiment = ExperimentKind::Inequality;
    else if (*v == "cover") cfg.experiment = ExperimentKind::Cover;
    else if (*v == "properties") cfg.experiment = ExperimentKind::Properties;
    else throw std::invalid_argument("unknown experiment kind: " + *v);
  }
  if (auto v = take("system")) decl.kind = *v;
  else throw std::invalid_argument("config is missing the system key");
  if (auto v = take("angle_rule")) decl.angle_rule = *v;
  if (auto v = take("angle_exponent")) decl.angle_exponent = parse_f64("angle_exponent", *v);
  if (auto v = take("angle_depth")) decl.angle_depth = static_cast<int>(parse_u64("angle_depth", *v));
  if (auto v = take("angle_value")) decl.angle_value = parse_f64("angle_value", *v);
  if (auto v = take("angle_terms")) {
    std::istringstream ts(*v);
    std::string tok;
    while (std::getline(ts, tok, ','))
      decl.angle_terms.push_back(parse_u64("angle_terms", trim(tok)));
  }
  if (auto v = take("n")) cfg.n = parse_u64("n", *v);
  if (auto v = take("burn_in")) cfg.burn_in = (*v == "default") ? ~0ULL : parse_u64("burn_in", *v);
  if (auto v = take("k_min")) k_min = static_cast<int>(parse_u64("k_min", *v));
  if (auto v = take("k_max")) k_max = static_cast<int>(parse_u64("k_max", *v));
  if (auto v = take("sources")) cfg.sources = static_cast<int>(parse_u64("sources", *v));
  if (auto v = take("targets")) cfg.targets = static_cast<int>(parse_u64("targets", *v));
  if (auto v = take("sample_n")) cfg.sample_n = parse_u64("sample_n", *v);
  if (auto v = take("seed")) cfg.seed = parse_u64("seed", *v);
  if (auto v = take("tolerance")) cfg.tolerance = parse_f64("tolerance", *v);
  if (auto v = take("tail_fraction")) cfg.tail_fraction = parse_f64("tail_fraction", *v);
  if (auto v = take("workers")) cfg.workers = static_cast<int>(parse_u64("workers", *v));
  if (auto v = take("mode")) {
    if (*v == "sequence") cfg.sequence_mode = true;
    else if (*v == "dynamical") cfg.sequence_mode = false;
    else throw std::invalid_argument("mode must be dynamical or sequence");
  }
  if (auto v = take("out_dir")) cfg.out_dir = *v;
  if (auto v = take("cover_h")) cfg.cover_h = parse_f64("cover_h", *v);
  if (auto v = take("cover_epsilon")) cfg.cover_epsilon = parse_f64("cover_epsilon", *v);
  if (auto v = take("cover_d")) cfg.cover_d = parse_f64("cover_d", *v);
  if (auto v = take("cover_k0")) cfg.cover_k0 = static_cast<int>(parse_u64("cover_k0", *v));
  if (auto v = take("grid_k")) cfg.grid_k = static_cast<int>(parse_u64("grid_k", *v));

  if (!kv.empty()) throw std::invalid_argument("unknown config key: " + kv.begin()->first);

  // Validate before any computation: module preconditions surface here.
  cfg.schedule = RadiusSchedule(k_min, k_max);
  cfg.system = make_system(decl);
  if (cfg.n < 1) throw std::invalid_argument("n must be >= 1");
  if (cfg.sources < 1 || cfg.targets < 1)
    throw std::invalid_argument("sources and targets must be >= 1");
  if (cfg.sample_n < 1) throw std::invalid_argument("sample_n must be >= 1");
  if (cfg.tolerance < 0) throw std::invalid_argument("tolerance must be >= 0");
  if (cfg.tail_fraction <= 0.0 || cfg.tail_fraction > 1.0)
    throw std::invalid_argument("tail_fraction must lie in (0,1]");
  if (cfg.workers < 1 || cfg.workers > 256)
    throw std::invalid_argument("workers must lie in [1,256]");
  if (cfg.experiment == ExperimentKind::Cover) {
    if (cfg.cover_epsilon <= 0) throw std::invalid_argument("cover_epsilon must be positive");
    if (cfg.cover_d <= cfg.cover_h + cfg.cover_epsilon)
      throw std::invalid_argument("cover bound requires cover_d > cover_h + cover_epsilon");
    if (cfg.grid_k < 2 || cfg.grid_k > 24)
      throw std::invalid_argument("grid_k must lie in [2,24]");
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  try {
    return parse_config_text(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream os;
  os << "experiment=" << to_string(experiment) << "\n";
  os << "system=" << system.name << "\n";
  os << "n=" << n << "\n";
  os << "burn_in=" << (burn_in == ~0ULL ? std::string("default") : std::to_string(burn_in))
     << "\n";
  os << "k_min=" << schedule.k_min << "\n";
  os << "k_max=" << schedule.k_max << "\n";
  os << "sources=" << sources << "\n";
  os << "targets=" << targets << "\n";
  os << "sample_n=" << sample_n << "\n";
  os << "seed=" << seed << "\n";
  os << "tolerance=" << format_double(tolerance) << "\n";
  os << "tail_fraction=" << format_double(tail_fraction) << "\n";
  os << "mode=" << (sequence_mode ? "sequence" : "dynamical") << "\n";
  if (experiment == ExperimentKind::Cover) {
    os << "cover_h=" << format_double(cover_h) << "\n";
    os << "cover_epsilon=" << format_double(cover_epsilon) << "\n";
    os << "cover_d=" << format_double(cover_d) << "\n";
    os << "cover_k0=" << cover_k0 << "\n";
    os << "grid_k=" << grid_k << "\n";
  }
  return os.str();
}

std::uint64_t ExperimentConfig::config_hash() const { return fnv1a64(canonical_text()); }

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Hitting: return "hitting";
    case ExperimentKind::Dimension: return "dimension";
    case ExperimentKind::Inequality: return "inequality";
    case ExperimentKind::Cover: return "cover";
    case ExperimentKind::Properties: return "properties";
  }
  return "unknown";
}

}  // namespace recdim
