// Acceptance gate: one line per criterion, PASS only when the named checks
// ran at the required volume, succeeded, and finished inside their time
// budget. Exit code = number of failed criteria.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "matising/suites.hpp"

namespace {

using matising::SuiteResult;
using matising::find_suite;

struct SuitePart {
  const char* suite;
  std::size_t count;       // cases requested (0 = suite default)
  std::size_t min_checked; // cases that must actually have run
};

struct Criterion {
  int number;
  const char* label;
  double budget_seconds;
  std::vector<SuitePart> parts;
};

const std::uint64_t kSeed = 1;

bool run_criterion(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::size_t checked = 0;
  std::string detail;

  for (const SuitePart& part : c.parts) {
    const auto* suite = find_suite(part.suite);
    if (!suite) {
      ok = false;
      detail = std::string("missing suite '") + part.suite + "'";
      break;
    }
    const SuiteResult res = suite->run(kSeed, part.count);
    checked += res.checked;
    if (!res.ok) {
      ok = false;
      detail = std::string(part.suite) + ": " + res.detail;
      break;
    }
    if (res.checked < part.min_checked) {
      ok = false;
      detail = std::string(part.suite) + ": only " + std::to_string(res.checked) +
               " of " + std::to_string(part.min_checked) + " required cases ran";
      break;
    }
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ok && elapsed > c.budget_seconds) {
    ok = false;
    detail = "time budget exceeded";
  }

  std::printf("[%2d] %s %s (%zu checks, %.3fs, budget %.3gs)%s%s\n", c.number,
              ok ? "PASS" : "FAIL", c.label, checked, elapsed, c.budget_seconds,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "splitting matrices and their exact ranks", 0.001,
       {{"matrix-identities", 1, 1}}},
      {2, "2-sum splitting identity on random pairs", 10.0,
       {{"split-2sum", 200, 200}}},
      {3, "3-sum splitting identity on random pairs", 60.0,
       {{"split-3sum", 100, 100}}},
      {4, "rank-correction tables match observed corrections", 120.0,
       {{"correction-tables", 50, 50}}},
      {5, "minor-vector inequalities on planted triangles", 120.0,
       {{"minor-inequalities", 500, 500}}},
      {6, "signature synthesis round-trips and base identity", 120.0,
       {{"signature-roundtrip", 500, 500}}},
      {7, "identity replacement preserves small exact values", 300.0,
       {{"identity-replacement", 2, 2}}},
      {8, "noisy replacement honours its accuracy window", 600.0,
       {{"replace-noise", 100, 100}}},
      {9, "clamps stay feasible and the stability check never lies", 300.0,
       {{"signature-clamp", 100000, 100000}, {"bilinear-stability", 100000, 100000}}},
      {10, "estimates of regular composites stay in the sandwich", 300.0,
       {{"estimate-sandwich", 20, 20}}},
      {11, "duality route and coloring crosscheck agree everywhere", 300.0,
       {{"duality", 100, 100}, {"potts", 1, 1}}},
  };

  // Untimed warmup so the 1ms budget of criterion 1 measures the arithmetic,
  // not first-call allocator and registry setup.
  if (const auto* warm = find_suite("matrix-identities")) warm->run(kSeed, 1);

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!run_criterion(c)) ++failures;
  }
  if (failures == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("acceptance: %d criteria FAILED\n", failures);
  }
  return failures;
}
