#include "ptsbo/sim/scheduler.hpp"

#include "ptsbo/csv.hpp"
#include "ptsbo/gp/hyperfit.hpp"
#include "ptsbo/gp/posterior.hpp"
#include "ptsbo/halton.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace ptsbo::sim {

namespace {

// Model used until the first hyperparameter fit.
constexpr double kDefaultBandwidth = 0.5;
constexpr double kDefaultScale = 1.0;
constexpr double kDefaultNoise = 1e-2;

// Owns the dataset of completed evaluations and turns it into selections.
class Planner {
 public:
  Planner(const SimulationConfig& config, const bench::Benchmark& objective, Rng algo_rng, Rng fit_rng)
      : config_(config),
        dim_(objective.dim),
        algo_rng_(algo_rng),
        fit_rng_(fit_rng),
        data_(objective.dim),
        kernel_(gp::Kernel::isotropic(config.kernel, objective.dim, kDefaultBandwidth, kDefaultScale)),
        noise_var_(config.gp_noise.value_or(kDefaultNoise)) {
    if (config_.init_method == InitMethod::Uncertainty && config_.init_count > 0) {
      const int pool = std::max(config_.candidate_count, config_.init_count);
      const Eigen::MatrixXd candidates = acq::quasi_uniform_candidates(pool, dim_, algo_rng_);
      init_points_ = acq::uncertainty_init(kernel_, candidates, config_.init_count, noise_var_);
    }
  }

  int completed() const { return data_.size(); }

  void observe(const Eigen::VectorXd& x, double y) {
    data_.add(x, y);
    best_y_ = std::max(best_y_, y);
    posterior_.reset();
  }

  // Refits when the completed count reaches the end of initialisation for the
  // first time, and afterwards whenever it crosses a multiple of refit_period.
  void maybe_refit() {
    if (!config_.strategy.uses_model()) return;
    const int n = completed();
    if (n < 2) return;
    const bool first = !fitted_ && n >= std::max(config_.init_count, 2);
    const bool periodic = fitted_ && n / config_.refit_period > last_fit_count_ / config_.refit_period;
    if (!first && !periodic) return;
    auto hp = gp::fit_hyperparams(data_, config_.kernel, config_.gp_noise, config_.fit_budget, fit_rng_);
    kernel_ = hp.kernel;
    noise_var_ = hp.noise_var;
    fitted_ = true;
    last_fit_count_ = n;
    posterior_.reset();
  }

  Eigen::VectorXd choose(long index, const acq::InFlightSet& in_flight) {
    if (index <= config_.init_count) {
      if (config_.init_method == InitMethod::Uncertainty) return init_points_.row(index - 1).transpose();
      Eigen::VectorXd x(dim_);
      for (int k = 0; k < dim_; ++k) x[k] = uniform01(algo_rng_);
      return x;
    }
    if (!config_.strategy.uses_model()) return random_candidate();
    const Eigen::MatrixXd candidates = acq::quasi_uniform_candidates(config_.candidate_count, dim_, algo_rng_);
    const gp::GpPosterior& post = posterior();
    const double best_y = data_.empty() ? post.mean_const() : best_y_;
    const acq::SelectionContext ctx{post, candidates, in_flight, index, best_y};
    return acq::select(config_.strategy, ctx, algo_rng_);
  }

 private:
  // Same law as select_random over a fresh candidate set, without building the set.
  Eigen::VectorXd random_candidate() {
    Eigen::VectorXd shift(dim_);
    for (int k = 0; k < dim_; ++k) shift[k] = uniform01(algo_rng_);
    std::uniform_int_distribution<long> pick(1, config_.candidate_count);
    const long i = pick(algo_rng_);
    Eigen::VectorXd x(dim_);
    for (int k = 0; k < dim_; ++k) {
      const double v = halton(i, k) + shift[k];
      x[k] = v >= 1.0 ? v - 1.0 : v;
    }
    return x;
  }

  const gp::GpPosterior& posterior() {
    if (!posterior_) {
      const double mean_const = data_.empty() ? 0.0 : gp::median(data_.values());
      posterior_ = gp::condition(kernel_, data_, noise_var_, mean_const);
    }
    return *posterior_;
  }

  const SimulationConfig& config_;
  int dim_;
  Rng algo_rng_;
  Rng fit_rng_;
  gp::Dataset data_;
  gp::Kernel kernel_;
  double noise_var_;
  bool fitted_ = false;
  int last_fit_count_ = 0;
  double best_y_ = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd init_points_;
  std::optional<gp::GpPosterior> posterior_;
};

struct Running {
  EvaluationRecord record;
  bool operator>(const Running& other) const {
    if (record.finish_time != other.record.finish_time) return record.finish_time > other.record.finish_time;
    return record.worker > other.record.worker;
  }
};

void validate(const SimulationConfig& c) {
  if (c.workers < 1) throw std::invalid_argument("simulation needs at least one worker");
  if (c.horizon.has_value() == c.budget.has_value()) {
    throw std::invalid_argument("exactly one of horizon and evaluation budget must be set");
  }
  if (c.horizon && !(*c.horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (c.budget && *c.budget < 1) throw std::invalid_argument("evaluation budget must be positive");
  if (c.init_count < 0) throw std::invalid_argument("init_count must be non-negative");
  if (c.refit_period < 1) throw std::invalid_argument("refit_period must be positive");
  if (c.fit_budget < 1) throw std::invalid_argument("fit_budget must be positive");
  if (c.candidate_count < 1) throw std::invalid_argument("candidate_count must be positive");
}

class Simulator {
 public:
  struct Streams {
    std::uint64_t time, noise, algorithm, fit;
  };

  // Evaluation times get their own stream, so runs with the same seed see the
  // same time sequence regardless of strategy.
  Simulator(const SimulationConfig& config, const bench::Benchmark& objective, const Streams& streams)
      : config_(config),
        objective_(objective),
        time_rng_(streams.time),
        noise_rng_(streams.noise),
        planner_(config, objective, Rng(streams.algorithm), Rng(streams.fit)),
        noise_sd_(config.noise_sd.value_or(objective.noise_sd)),
        horizon_(config.horizon.value_or(std::numeric_limits<double>::infinity())),
        budget_(config.budget.value_or(std::numeric_limits<long>::max())) {}

  Trace run() {
    Trace trace;
    trace.mode = config_.mode;
    trace.workers = config_.mode == Mode::Sequential ? 1 : config_.workers;
    trace.horizon = horizon_;
    if (config_.mode == Mode::Synchronous) {
      run_synchronous(trace);
    } else {
      run_asynchronous(trace);
    }
    std::sort(trace.records.begin(), trace.records.end(),
              [](const auto& a, const auto& b) { return a.index < b.index; });
    return trace;
  }

 private:
  EvaluationRecord dispatch(int worker, double now, const acq::InFlightSet& in_flight) {
    EvaluationRecord r;
    r.index = ++dispatched_;
    r.worker = worker;
    r.dispatch_time = now;
    r.filtration_size = planner_.completed();
    r.point = planner_.choose(r.index, in_flight);
    r.clean_value = bench::eval_clean(objective_, r.point);
    r.value = r.clean_value + (noise_sd_ > 0.0 ? noise_sd_ * standard_normal(noise_rng_) : 0.0);
    r.finish_time = now + config_.times.sample(time_rng_);
    return r;
  }

  void complete(const EvaluationRecord& r, Trace& trace) {
    trace.records.push_back(r);
    planner_.observe(r.point, r.value);
  }

  void run_asynchronous(Trace& trace) {
    const int workers = trace.workers;
    std::priority_queue<Running, std::vector<Running>, std::greater<>> running;
    auto in_flight = [&] {
      auto copy = running;
      acq::InFlightSet out(static_cast<Eigen::Index>(copy.size()), objective_.dim);
      for (Eigen::Index i = 0; !copy.empty(); ++i, copy.pop()) out.row(i) = copy.top().record.point.transpose();
      return out;
    };
    for (int w = 0; w < workers && dispatched_ < budget_; ++w) running.push({dispatch(w, 0.0, in_flight())});

    while (!running.empty()) {
      const double now = running.top().record.finish_time;
      if (now > horizon_) break;
      std::vector<int> freed;
      while (!running.empty() && running.top().record.finish_time == now) {
        complete(running.top().record, trace);
        freed.push_back(running.top().record.worker);
        running.pop();
        planner_.maybe_refit();
      }
      for (int w : freed) {
        if (dispatched_ >= budget_) break;
        running.push({dispatch(w, now, in_flight())});
      }
    }
  }

  void run_synchronous(Trace& trace) {
    double now = 0.0;
    while (dispatched_ < budget_ && now <= horizon_) {
      const long size = std::min<long>(config_.workers, budget_ - dispatched_);
      std::vector<EvaluationRecord> batch;
      acq::InFlightSet chosen(0, objective_.dim);
      for (int w = 0; w < size; ++w) {
        batch.push_back(dispatch(w, now, chosen));
        chosen.conservativeResize(chosen.rows() + 1, Eigen::NoChange);
        chosen.row(chosen.rows() - 1) = batch.back().point.transpose();
      }
      std::sort(batch.begin(), batch.end(), [](const auto& a, const auto& b) {
        return a.finish_time != b.finish_time ? a.finish_time < b.finish_time : a.worker < b.worker;
      });
      for (const auto& r : batch) {
        if (r.finish_time > horizon_) return;
        complete(r, trace);
      }
      planner_.maybe_refit();
      now = batch.back().finish_time;
    }
  }

  const SimulationConfig& config_;
  const bench::Benchmark& objective_;
  Rng time_rng_;
  Rng noise_rng_;
  Planner planner_;
  double noise_sd_;
  double horizon_;
  long budget_;
  long dispatched_ = 0;
};

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Sequential: return "sequential";
    case Mode::Synchronous: return "synchronous";
    case Mode::Asynchronous: return "asynchronous";
  }
  return "asynchronous";
}

Mode mode_from_string(std::string_view name) {
  for (auto m : {Mode::Sequential, Mode::Synchronous, Mode::Asynchronous}) {
    if (name == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown mode '" + std::string(name) +
                              "' (expected sequential, synchronous or asynchronous)");
}

Trace run_simulation(const SimulationConfig& config, const bench::Benchmark& objective, Rng& rng) {
  validate(config);
  Simulator::Streams streams{};
  streams.time = rng();
  streams.noise = rng();
  streams.algorithm = rng();
  streams.fit = rng();
  Simulator sim(config, objective, streams);
  return sim.run();
}

long count_completed(const Trace& trace, double t) {
  if (t < 0.0 || t > trace.horizon) throw std::invalid_argument("count_completed: t outside [0, horizon]");
  return std::count_if(trace.records.begin(), trace.records.end(),
                       [t](const EvaluationRecord& r) { return r.finish_time <= t; });
}

void write_trace_csv(const Trace& trace, std::ostream& out) {
  const Eigen::Index dim = trace.records.empty() ? 0 : trace.records.front().point.size();
  out << "index,worker,dispatch_time,finish_time,value,clean_value";
  for (Eigen::Index k = 0; k < dim; ++k) out << ",x" << k;
  out << '\n';
  for (const auto& r : trace.records) {
    out << r.index << ',' << r.worker << ',' << format_double(r.dispatch_time) << ',' << format_double(r.finish_time)
        << ',' << format_double(r.value) << ',' << format_double(r.clean_value);
    for (Eigen::Index k = 0; k < r.point.size(); ++k) out << ',' << format_double(r.point[k]);
    out << '\n';
  }
}

std::vector<EvaluationRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("trace CSV is empty");
  const auto header = split_csv_line(line);
  if (header.size() < 6 || header[0] != "index") throw std::invalid_argument("trace CSV has an unexpected header");
  const size_t dim = header.size() - 6;
  std::vector<EvaluationRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw std::invalid_argument("trace CSV row has the wrong number of fields");
    EvaluationRecord r;
    r.index = std::stol(cells[0]);
    r.worker = std::stoi(cells[1]);
    r.dispatch_time = parse_double(cells[2]);
    r.finish_time = parse_double(cells[3]);
    r.value = parse_double(cells[4]);
    r.clean_value = parse_double(cells[5]);
    r.point.resize(static_cast<Eigen::Index>(dim));
    for (size_t k = 0; k < dim; ++k) r.point[static_cast<Eigen::Index>(k)] = parse_double(cells[6 + k]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ptsbo::sim
