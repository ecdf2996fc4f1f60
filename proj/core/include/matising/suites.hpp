#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace matising {

/// Outcome of one named self-check suite.
struct SuiteResult {
  bool ok = true;
  std::size_t checked = 0;  // individual cases examined
  std::string detail;       // failure description, or a short summary note
};

/// Named randomized or exhaustive consistency check over the library's two
/// evaluation routes. `run(seed, count)` draws its cases deterministically
/// from `seed`; `count` scales the volume, 0 picks the suite's default.
struct SuiteInfo {
  std::string name;
  std::string summary;
  std::size_t default_count = 0;
  std::function<SuiteResult(std::uint64_t seed, std::size_t count)> run;
};

const std::vector<SuiteInfo>& all_suites();

/// nullptr when no suite has that name.
const SuiteInfo* find_suite(const std::string& name);

}  // namespace matising
