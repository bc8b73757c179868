#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>

namespace ptsbo::harness {

struct TheorySuiteConfig {
  long mc_trials = 1'000'000;   // expected-max and tail checks
  long ks_trials = 100'000;     // Renyi two-sampler comparison
  int concentration_runs = 500;
  std::uint64_t seed = 0;
  std::optional<double> mc_tolerance;  // replaces every Monte Carlo tolerance when set
};

/// Strict parse; unknown keys raise ConfigError.
TheorySuiteConfig parse_theory_config(const nlohmann::json& doc);

/// Report: {"config": {...}, "checks": [{name, parameters, expected, observed,
/// tolerance, pass}, ...], "passed": k, "failed": k, "all_pass": bool}
nlohmann::ordered_json run_theory_suite(const TheorySuiteConfig& config);

}  // namespace ptsbo::harness
