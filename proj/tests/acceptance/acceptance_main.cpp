// Acceptance suite: runs every criterion and prints one PASS/FAIL line each.
// Exit code 0 only when all criteria pass.

#include <cstdio>
#include <cstring>
#include <string>

#include "slocal/verify.hpp"

int main(int argc, char** argv) {
  slocal::verify::Options opts;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--golden") == 0 && i + 1 < argc) {
      opts.golden_path = argv[++i];
    } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
      opts.seed = std::stoull(argv[++i]);
    } else if (std::strcmp(argv[i], "--no-runtime-budget") == 0) {
      opts.enforce_runtime = false;
    } else {
      std::fprintf(stderr,
                   "usage: %s [--golden file] [--seed n] [--no-runtime-budget]\n", argv[0]);
      return 2;
    }
  }

  const auto results = slocal::verify::run_all(opts);
  for (const auto& r : results) {
    std::printf("%s criterion %2d  %-42s %7.2fs", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
    if (r.budget_seconds > 0) std::printf(" (budget %.0fs)", r.budget_seconds);
    std::printf("\n");
    if (!r.detail.empty()) std::printf("     %s\n", r.detail.c_str());
  }
  const bool ok = slocal::verify::all_passed(results);
  std::printf("%s\n", ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
  return ok ? 0 : 1;
}
