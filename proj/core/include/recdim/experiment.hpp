#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recdim/config.hpp"
#include "recdim/cover.hpp"
#include "recdim/inequality.hpp"
#include "recdim/properties.hpp"

namespace recdim {

/// What a run produced: per-file checksums plus provenance.  Re-running an
/// identical config reproduces byte-identical outputs (timestamps live only
/// here, not in the outputs).
struct RunManifest {
  std::string config_hash;
  std::string artifact_version;
  std::string created_utc;
  double seconds = 0.0;
  struct OutputFile {
    std::string name;
    std::uint64_t bytes = 0;
    std::string fnv64;
  };
  std::vector<OutputFile> outputs;
};

/// Runs the configured experiment, writes its outputs (CSV/JSON) plus
/// manifest.json under cfg.out_dir, and returns the manifest.
RunManifest run_experiment(const ExperimentConfig& cfg);

/// In-memory variant used by the acceptance suite and determinism checks:
/// returns named output payloads without touching the filesystem.
std::vector<std::pair<std::string, std::string>> render_experiment(const ExperimentConfig& cfg);

// Serializers (deterministic: fixed field order, shortest round-trip floats).
std::string hitting_csv(const std::vector<HittingProfile>& profiles, const std::string& system);
std::string slopes_csv(const std::vector<std::pair<std::string, SlopeEstimate>>& rows);
std::string inequality_json(const InequalityReport& report);
std::string inequality_text(const InequalityReport& report);
std::string cover_json(const CoverEstimate& cover);
std::string cover_text(const CoverEstimate& cover);
std::string properties_json(const std::vector<IndicatorPropertyReport>& reports,
                            const HolderCheckResult& holder);

}  // namespace recdim
