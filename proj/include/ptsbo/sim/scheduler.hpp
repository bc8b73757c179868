#pragma once

#include "ptsbo/acquisition/acquisition.hpp"
#include "ptsbo/benchmarks/benchmarks.hpp"
#include "ptsbo/gp/kernel.hpp"
#include "ptsbo/rng.hpp"
#include "ptsbo/sim/time_distribution.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ptsbo::sim {

enum class Mode { Sequential, Synchronous, Asynchronous };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view name);

enum class InitMethod { Random, Uncertainty };

/// One dispatched evaluation that finished inside the horizon.
struct EvaluationRecord {
  long index = 0;  // 1-based dispatch order
  Eigen::VectorXd point;
  double value = 0.0;        // noisy observation seen by the algorithm
  double clean_value = 0.0;  // noise-free value, used only for regret
  double dispatch_time = 0.0;
  double finish_time = 0.0;
  int worker = 0;
  int filtration_size = 0;  // completed evaluations visible when this one was chosen
};

struct Trace {
  std::vector<EvaluationRecord> records;  // sorted by index
  Mode mode = Mode::Asynchronous;
  int workers = 1;
  double horizon = 0.0;  // +inf for evaluation-budget runs
};

struct SimulationConfig {
  Mode mode = Mode::Asynchronous;
  int workers = 1;
  std::optional<double> horizon;  // exactly one of horizon / budget
  std::optional<long> budget;
  acq::AcquisitionStrategy strategy{acq::StrategyKind::TS};
  TimeDistribution times{Exponential{1.0}};
  int init_count = 0;
  InitMethod init_method = InitMethod::Random;
  int refit_period = 25;
  int fit_budget = 100;
  int candidate_count = 500;
  gp::KernelFamily kernel = gp::KernelFamily::SquaredExponential;
  std::optional<double> noise_sd;  // overrides the benchmark's noise level
  std::optional<double> gp_noise;  // pins the GP noise variance instead of fitting it
};

/// Discrete-event simulation of `workers` parallel evaluators. Events are
/// processed in (finish time, worker) order; evaluations still running at the
/// horizon are dropped.
Trace run_simulation(const SimulationConfig& config, const bench::Benchmark& objective, Rng& rng);

/// Number of records with finish_time <= t, for 0 <= t <= horizon.
long count_completed(const Trace& trace, double t);

/// CSV: index,worker,dispatch_time,finish_time,value,clean_value,x0..x{d-1}
void write_trace_csv(const Trace& trace, std::ostream& out);
std::vector<EvaluationRecord> read_trace_csv(std::istream& in);

}  // namespace ptsbo::sim
