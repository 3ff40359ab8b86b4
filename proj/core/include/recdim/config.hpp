#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recdim/schedule.hpp"
#include "recdim/system.hpp"

namespace recdim {

enum class ExperimentKind : std::uint8_t {
  Hitting,     // hitting profiles CSV for sampled pairs
  Dimension,   // occupation-slope dimension estimates
  Inequality,  // recurrence-vs-dimension report
  Cover,       // sub-level-set cover bound
  Properties,  // shift/Lipschitz identity checks
};

/// Flat key=value experiment description.  Every field is validated against
/// the module preconditions before any computation starts.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Inequality;
  SystemSpec system;
  std::uint64_t n = 1'000'000;
  std::uint64_t burn_in = ~0ULL;  // ~0 = system default
  RadiusSchedule schedule{4, 14};
  int sources = 10;
  int targets = 10;
  std::uint64_t sample_n = 1'000'000;
  std::uint64_t seed = 1;
  double tolerance = 0.15;
  double tail_fraction = 0.5;
  int workers = 1;
  bool sequence_mode = false;
  std::string out_dir = "out";

  // cover experiments
  double cover_h = 0.5;
  double cover_epsilon = 0.1;
  double cover_d = 0.8;
  int cover_k0 = 20;
  int grid_k = 12;

  std::string canonical_text() const;  // sorted key=value lines
  std::uint64_t config_hash() const;
};

/// Parses the flat config format (one `key = value` per line, '#' comments).
/// Unknown keys and invalid values are errors.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Nonnegative integer with 1e6-style shorthand accepted.
std::uint64_t parse_count(const std::string& label, const std::string& value);

/// System declaration shared by configs and the CLI:
/// kind rotation|doubling|logistic|cat_map|cantor_shift|constant_map with
/// angle_rule golden|silver|power|explicit|decimal (+ exponent/terms/depth
/// or value) for rotations.
struct SystemDecl {
  std::string kind;
  std::string angle_rule = "golden";
  double angle_exponent = 2.0;
  std::vector<std::uint64_t> angle_terms;
  int angle_depth = 190;
  double angle_value = 0.0;
};
SystemSpec make_system(const SystemDecl& decl);

const char* to_string(ExperimentKind k);

}  // namespace recdim
