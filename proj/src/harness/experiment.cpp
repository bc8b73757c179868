#include "ptsbo/harness/experiment.hpp"

#include "ptsbo/benchmarks/benchmarks.hpp"
#include "ptsbo/errors.hpp"
#include "ptsbo/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

namespace ptsbo::harness {

namespace fs = std::filesystem;

namespace {

struct Job {
  size_t arm;
  std::uint64_t seed;
};

// Runs every job, possibly on several threads. Results land in fixed slots so
// the output does not depend on scheduling.
std::vector<sim::Trace> run_jobs(const ExperimentConfig& config, const std::vector<Job>& jobs,
                                 const bench::Benchmark& objective) {
  std::vector<sim::Trace> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      try {
        const auto sim_config = config.simulation(config.arms[jobs[i].arm]);
        Rng rng = make_stream(jobs[i].seed, 0);
        out[i] = sim::run_simulation(sim_config, objective, rng);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(config.threads, static_cast<int>(jobs.size()));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw RunFailure(config.arms[jobs[i].arm].name, jobs[i].seed, e.what());
    }
  }
  return out;
}

metrics::RegretCurve resample(const metrics::RegretCurve& curve, const std::vector<double>& grid) {
  metrics::RegretCurve out{curve.axis, {}, curve.meta};
  for (double g : grid) out.points.push_back({g, metrics::value_at(curve, g), 0.0, 1});
  return out;
}

metrics::RegretCurve aggregate(const std::vector<metrics::RegretCurve>& curves, const std::vector<double>& grid) {
  return curves.size() == 1 ? resample(curves.front(), grid) : metrics::bayes_average(curves, grid);
}

void write_curve(const metrics::RegretCurve& curve, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  metrics::write_curve_csv(curve, out);
}

metrics::RegretCurve read_curve(const fs::path& path, metrics::Axis axis) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return metrics::read_curve_csv(in, axis);
}

std::string curve_file(const std::string& arm, metrics::Axis axis) {
  return arm + "_" + std::string(axis_name(axis)) + ".csv";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

std::string_view axis_name(metrics::Axis axis) { return axis == metrics::Axis::ByCount ? "by_count" : "by_time"; }

ReportBundle run_experiment(const ExperimentConfig& config) {
  if (config.arms.empty()) throw ConfigError("arms", "no arms to run");
  if (config.runs < 1) throw ConfigError("runs", "must be at least 1");
  const auto& objective = bench::benchmark_by_name(config.benchmark);

  std::vector<Job> jobs;
  for (size_t a = 0; a < config.arms.size(); ++a) {
    for (int r = 0; r < config.runs; ++r) jobs.push_back({a, config.base_seed + static_cast<std::uint64_t>(r)});
  }
  auto traces = run_jobs(config, jobs, objective);

  // Shared grids so curves from different arms line up.
  long n_max = 1;
  double t_max = 0.0;
  for (const auto& t : traces) {
    n_max = std::max<long>(n_max, static_cast<long>(t.records.size()));
    for (const auto& r : t.records) t_max = std::max(t_max, r.finish_time);
  }
  if (config.budget) n_max = *config.budget;
  const double t_end = config.horizon ? *config.horizon : (t_max > 0.0 ? t_max : 1.0);
  std::vector<double> count_grid;
  for (long n = 1; n <= n_max; ++n) count_grid.push_back(static_cast<double>(n));
  std::vector<double> time_grid;
  for (int i = 1; i <= config.time_grid_points; ++i) time_grid.push_back(t_end * i / config.time_grid_points);

  const double worst = bench::worst_deviation(objective);
  ReportBundle bundle{config, {}, std::nullopt};
  size_t job = 0;
  for (const auto& arm : config.arms) {
    ArmResult result{arm, {}, {}, {}};
    std::vector<metrics::RegretCurve> by_count, by_time;
    for (int r = 0; r < config.runs; ++r, ++job) {
      const metrics::RunMeta meta{jobs[job].seed, std::string(acq::to_string(arm.strategy.kind())),
                                  std::string(sim::to_string(arm.mode)), arm.workers, objective.name};
      auto c = metrics::simple_regret_by_count(traces[job], objective.opt_value);
      auto t = metrics::simple_regret_by_time(traces[job], time_grid, objective.opt_value, worst);
      if (c.points.empty()) {
        // Nothing finished: regret is the worst-case deviation everywhere.
        c.points.push_back({1.0, worst, 0.0, 1});
      }
      c.meta = meta;
      t.meta = meta;
      by_count.push_back(std::move(c));
      by_time.push_back(std::move(t));
      result.traces.push_back({jobs[job].seed, std::move(traces[job])});
    }
    result.by_count = aggregate(by_count, count_grid);
    result.by_time = aggregate(by_time, time_grid);
    bundle.arms.push_back(std::move(result));
  }
  return bundle;
}

void write_bundle(const ReportBundle& bundle, const fs::path& dir) {
  fs::create_directories(dir);
  write_text(dir / "config.json", emit_experiment_config(bundle.config).dump(2) + "\n");
  for (const auto& arm : bundle.arms) {
    write_curve(arm.by_count, dir / curve_file(arm.arm.name, metrics::Axis::ByCount));
    write_curve(arm.by_time, dir / curve_file(arm.arm.name, metrics::Axis::ByTime));
    if (!bundle.config.write_traces || arm.traces.empty()) continue;
    fs::create_directories(dir / "traces");
    for (const auto& st : arm.traces) {
      std::ofstream out(dir / "traces" / (arm.arm.name + "_seed" + std::to_string(st.seed) + ".csv"), std::ios::binary);
      sim::write_trace_csv(st.trace, out);
    }
  }
  if (bundle.theory) write_text(dir / "theory.json", bundle.theory->dump(2) + "\n");
}

ReportBundle load_bundle(const fs::path& dir) {
  ReportBundle bundle{load_experiment_config((dir / "config.json").string()), {}, std::nullopt};
  for (const auto& arm : bundle.config.arms) {
    bundle.arms.push_back({arm,
                           {},
                           read_curve(dir / curve_file(arm.name, metrics::Axis::ByCount), metrics::Axis::ByCount),
                           read_curve(dir / curve_file(arm.name, metrics::Axis::ByTime), metrics::Axis::ByTime)});
  }
  if (fs::exists(dir / "theory.json")) {
    std::ifstream in(dir / "theory.json");
    bundle.theory = nlohmann::ordered_json::parse(in);
  }
  return bundle;
}

std::vector<fs::path> emit_plot_data(const ReportBundle& bundle, metrics::Axis axis, const fs::path& dir) {
  if (bundle.arms.empty()) throw std::invalid_argument("bundle has no curves to emit");
  const auto& pick = [axis](const ArmResult& a) -> const metrics::RegretCurve& {
    return axis == metrics::Axis::ByCount ? a.by_count : a.by_time;
  };
  const auto& ref = pick(bundle.arms.front()).points;
  for (const auto& arm : bundle.arms) {
    const auto& pts = pick(arm).points;
    bool same = pts.size() == ref.size();
    for (size_t i = 0; same && i < pts.size(); ++i) same = pts[i].coordinate == ref[i].coordinate;
    if (!same) throw std::invalid_argument("arm " + arm.arm.name + " uses a different coordinate grid");
  }
  fs::create_directories(dir);
  std::vector<fs::path> written;
  for (const auto& arm : bundle.arms) {
    written.push_back(dir / curve_file(arm.arm.name, axis));
    write_curve(pick(arm), written.back());
  }
  return written;
}

}  // namespace ptsbo::harness
