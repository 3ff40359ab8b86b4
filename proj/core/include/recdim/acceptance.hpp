#pragma once

#include <string>
#include <vector>

namespace recdim {

/// One acceptance criterion outcome.  canonical_bytes concatenates the
/// criterion's serialized outputs for byte-level determinism comparisons.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
  std::string canonical_bytes;

  bool within_budget() const { return budget_seconds <= 0.0 || seconds <= budget_seconds; }
};

/// Runs acceptance criterion `id` (1..10) with the given worker count.
/// Criterion 10 re-runs the others and compares output bytes, so it ignores
/// `workers`.
CriterionResult run_criterion(int id, int workers = 1);

/// All criteria in order; prints one pass/fail line per criterion to stdout
/// when verbose.
std::vector<CriterionResult> run_acceptance_suite(bool verbose, int workers = 1);

std::string format_criterion_line(const CriterionResult& r);

}  // namespace recdim
