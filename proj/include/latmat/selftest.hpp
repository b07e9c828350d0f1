#pragma once

// Library-wide invariant checks at small sizes, run by `latmat selftest`.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace latmat {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  std::uint64_t seed = 20240601;
  int instances = 60;
  /// Largest n for the K(n) checks (full enumeration).
  int max_n = 5;
};

std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

/// One `PASS name: detail` / `FAIL name: detail` line per check; true when all passed.
bool print_results(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace latmat
