#pragma once

#include "ptsbo/harness/config.hpp"
#include "ptsbo/metrics/regret.hpp"
#include "ptsbo/sim/scheduler.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptsbo::harness {

/// A simulation threw; names the arm and seed so the run can be replayed alone.
class RunFailure : public std::runtime_error {
 public:
  RunFailure(std::string arm, std::uint64_t seed, const std::string& what)
      : std::runtime_error("arm " + arm + ", seed " + std::to_string(seed) + ": " + what),
        arm_(std::move(arm)),
        seed_(seed) {}
  const std::string& arm() const { return arm_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::string arm_;
  std::uint64_t seed_;
};

struct SeededTrace {
  std::uint64_t seed;
  sim::Trace trace;
};

struct ArmResult {
  Arm arm;
  std::vector<SeededTrace> traces;  // ordered by seed; empty after load_bundle
  metrics::RegretCurve by_count;
  metrics::RegretCurve by_time;
};

struct ReportBundle {
  ExperimentConfig config;
  std::vector<ArmResult> arms;
  std::optional<nlohmann::ordered_json> theory;
};

/// Runs every arm for seeds base_seed .. base_seed+runs-1. All arms share the
/// seeds (and therefore the evaluation-time draws) and the curve grids.
ReportBundle run_experiment(const ExperimentConfig& config);

/// Layout:
///   config.json
///   <arm>_by_count.csv, <arm>_by_time.csv
///   traces/<arm>_seed<seed>.csv      (when write_traces)
///   theory.json                      (when present)
void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir);

/// Reads the config echo and the curves back; traces are not loaded.
ReportBundle load_bundle(const std::filesystem::path& dir);

/// Writes <arm>_<axis>.csv (coordinate,mean,stderr,run_count) for each arm and
/// returns the paths. Fails on an empty bundle or mismatched grids.
std::vector<std::filesystem::path> emit_plot_data(const ReportBundle& bundle, metrics::Axis axis,
                                                  const std::filesystem::path& dir);

std::string_view axis_name(metrics::Axis axis);

}  // namespace ptsbo::harness
