#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lightcone {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double runtime_ms = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  /// Deterministic serialization; runtimes only when with_timings is set.
  nlohmann::ordered_json to_json(bool with_timings = false) const;
};

/// Executes one of the verification suites:
/// cocycle | generators | connections | localization | all.
/// tol_overrides maps check names to replacement tolerances.
/// Throws std::invalid_argument for unknown suite names.
SuiteReport run_suite(const std::string& name, std::uint64_t seed,
                      const std::map<std::string, double>& tol_overrides = {});

}  // namespace lightcone
