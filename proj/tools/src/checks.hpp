#pragma once

// Acceptance checks shared by `diffmix report` and the acceptance test binary.
// Every check is a pure call into the library; the artifacts it produces are
// CSV bodies keyed by file name, so two runs can be compared byte for byte.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace diffmix::app {

enum class Suite { core, extended };

Suite parse_suite(const std::string& name);
std::string to_string(Suite s);

struct CheckResult {
  int id = 0;  // criterion number; 0 marks an informational probe
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=", "<" or ">="
  double threshold = 0.0;
  double seconds = 0.0;
  double budget = 0.0;  // runtime limit in seconds, 0 = none
  bool pass = false;
  std::string detail;
};

using Artifacts = std::map<std::string, std::string>;

struct SuiteRun {
  std::vector<CheckResult> checks;
  Artifacts artifacts;
};

using Progress = std::function<void(const CheckResult&)>;

/// Mean-zero sum of three shifted Gaussian derivatives with seeded
/// coefficients, scaled to max |w| = amplitude.
std::vector<double> seeded_perturbation(const std::vector<double>& nodes, std::uint64_t seed, double amplitude);

/// Criteria 1 to 11. The core suite sweeps coercivity over phi_d in {0.5, 2};
/// the extended suite adds phi_d = 5. The seed only drives the informational
/// seeded-corpus probe.
SuiteRun run_checks(Suite suite, std::uint64_t seed, const Progress& progress = {});

/// Criterion 12: two core runs with the same seed must give identical CSV bodies.
CheckResult check_determinism(std::uint64_t seed, const SuiteRun* first = nullptr);

/// Row of checks.csv (no runtimes, so it is reproducible).
std::string checks_csv(const std::vector<CheckResult>& checks);

/// "[PASS] 1 name: value=... <= threshold (0.01 s / 1 s)".
std::string format_line(const CheckResult& r);

}  // namespace diffmix::app
