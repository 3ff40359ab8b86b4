// Acceptance runner: one binary, one pass/fail line per criterion.
// Usage: acceptance [--criterion N] [--workers W]

#include <cstdio>
#include <cstring>
#include <string>

#include "recdim/acceptance.hpp"

int main(int argc, char** argv) {
  int criterion = 0;
  int workers = 1;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      criterion = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) {
      workers = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N] [--workers W]\n");
      return 2;
    }
  }

  try {
    if (criterion > 0) {
      auto r = recdim::run_criterion(criterion, workers);
      std::printf("%s\n", recdim::format_criterion_line(r).c_str());
      return r.pass ? 0 : 1;
    }
    auto results = recdim::run_acceptance_suite(true, workers);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    std::printf("%s\n", all ? "acceptance: all criteria passed"
                            : "acceptance: some criteria FAILED");
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance error: %s\n", e.what());
    return 1;
  }
}
