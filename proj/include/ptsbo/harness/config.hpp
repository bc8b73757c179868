#pragma once

#include "ptsbo/acquisition/acquisition.hpp"
#include "ptsbo/gp/kernel.hpp"
#include "ptsbo/sim/scheduler.hpp"
#include "ptsbo/sim/time_distribution.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ptsbo::harness {

/// One compared method: execution mode, worker count and selection rule.
struct Arm {
  std::string name;
  sim::Mode mode = sim::Mode::Asynchronous;
  int workers = 1;
  acq::AcquisitionStrategy strategy{acq::StrategyKind::TS};
  bool operator==(const Arm&) const = default;
};

/// Requested evaluation-time law. With `unit_mean` the family is rescaled to mean 1.
struct TimeSpec {
  sim::TimeDistribution base{sim::Exponential{1.0}};
  bool unit_mean = false;
  sim::TimeDistribution resolved() const { return unit_mean ? base.unit_mean() : base; }
  bool operator==(const TimeSpec&) const = default;
};

struct ExperimentConfig {
  std::string benchmark = "Branin";
  std::vector<Arm> arms;
  std::optional<double> horizon;
  std::optional<long> budget;
  TimeSpec times;
  std::optional<double> noise_sd;
  int n_init = 10;
  sim::InitMethod init_method = sim::InitMethod::Random;
  int refit_period = 25;
  int fit_budget = 100;
  int candidate_count = 500;
  gp::KernelFamily kernel = gp::KernelFamily::SquaredExponential;
  std::optional<double> gp_noise;
  int runs = 1;
  std::uint64_t base_seed = 0;
  std::string output = "out";
  int time_grid_points = 100;
  bool write_traces = true;
  int threads = 1;

  bool operator==(const ExperimentConfig&) const = default;

  /// Simulation settings for one arm.
  sim::SimulationConfig simulation(const Arm& arm) const;
};

/// Default arm name, e.g. "asyTS", "synHTS", "seqRand".
std::string default_arm_name(sim::Mode mode, acq::StrategyKind kind);

/// Strict parse: unknown keys and invalid values raise ConfigError naming the field.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::string& path);

/// Canonical document with every field spelled out; parse(emit(c)) == c.
nlohmann::ordered_json emit_experiment_config(const ExperimentConfig& config);

nlohmann::ordered_json time_distribution_to_json(const sim::TimeDistribution& dist);
sim::TimeDistribution time_distribution_from_json(const nlohmann::json& doc, const std::string& path);

}  // namespace ptsbo::harness
