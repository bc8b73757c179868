#include "ptsbo/theory/order_stats.hpp"

#include "ptsbo/benchmarks/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace ptsbo::theory {

double harmonic(int m) {
  if (m < 1) throw std::invalid_argument("harmonic number needs M >= 1");
  double h = 0.0;
  for (int i = m; i >= 1; --i) h += 1.0 / i;
  return h;
}

MaxStats expected_max(const sim::TimeDistribution& dist, int workers) {
  if (workers < 1) throw std::invalid_argument("expected_max needs M >= 1");
  MaxStats s{dist, workers, dist.mean(), std::nullopt, std::nullopt, std::nullopt};
  const auto m = static_cast<double>(workers);
  const auto& v = dist.variant();
  if (const auto* u = std::get_if<sim::Uniform>(&v)) {
    s.exact_max = (u->a + u->b * m) / (m + 1.0);
  } else if (const auto* e = std::get_if<sim::Exponential>(&v)) {
    s.exact_max = harmonic(workers) / e->lambda;
  } else if (const auto* h = std::get_if<sim::HalfNormal>(&v)) {
    s.upper_bound = std::sqrt(h->zeta_sq) * std::sqrt(2.0 * std::log(2.0 * m));
    if (workers == 1) s.exact_max = s.expected_single;
  }
  return s;
}

MaxStats expected_max(const sim::TimeDistribution& dist, int workers, long trials, Rng& rng) {
  MaxStats s = expected_max(dist, workers);
  s.mc_max = mc_expected_max(dist, workers, trials, rng);
  return s;
}

double mc_expected_max(const sim::TimeDistribution& dist, int workers, long trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("Monte Carlo needs at least one trial");
  if (workers < 1) throw std::invalid_argument("expected_max needs M >= 1");
  double sum = 0.0;
  for (long t = 0; t < trials; ++t) {
    double best = 0.0;
    for (int i = 0; i < workers; ++i) best = std::max(best, dist.sample(rng));
    sum += best;
  }
  return sum / static_cast<double>(trials);
}

std::vector<double> renyi_order_statistics(int m, double lambda, Rng& rng) {
  if (m < 1) throw std::invalid_argument("renyi_order_statistics needs M >= 1");
  if (!(lambda > 0.0)) throw std::invalid_argument("renyi_order_statistics needs lambda > 0");
  const sim::TimeDistribution spacing{sim::Exponential{lambda}};
  std::vector<double> spacings(static_cast<size_t>(m));
  for (auto& e : spacings) e = spacing.sample(rng);
  // out[i-1] = sum_{k=i}^{M} E_k / k, accumulated from the smallest statistic up.
  std::vector<double> out(static_cast<size_t>(m));
  double acc = 0.0;
  for (int k = m; k >= 1; --k) {
    acc += spacings[static_cast<size_t>(k - 1)] / k;
    out[static_cast<size_t>(k - 1)] = acc;
  }
  return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS statistic needs two non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

NBoundInterval n_bounds(const sim::TimeDistribution& dist, sim::Mode mode, int workers, double horizon, double alpha,
                        std::optional<double> theta_max_estimate) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (workers < 1) throw std::invalid_argument("n_bounds needs M >= 1");
  const double theta = dist.mean();
  if (!std::isfinite(theta)) throw std::invalid_argument("evaluation time has no finite mean");
  const auto m = static_cast<double>(workers);
  switch (mode) {
    case sim::Mode::Sequential:
      return {mode, horizon / (theta * (1.0 + alpha)) - 1.0, horizon / (theta * (1.0 - alpha)), alpha};
    case sim::Mode::Asynchronous:
      return {mode, m * (horizon / (theta * (1.0 + alpha)) - 1.0), m * horizon / (theta * (1.0 - alpha)), alpha};
    case sim::Mode::Synchronous: {
      std::optional<double> theta_m = expected_max(dist, workers).exact_max;
      if (!theta_m) theta_m = theta_max_estimate;
      if (!theta_m) {
        throw std::invalid_argument("no exact expected maximum for " + dist.name() +
                                    " times; supply a Monte Carlo estimate of theta_M");
      }
      return {mode, m * (horizon / (*theta_m * (1.0 + alpha)) - 1.0), m * horizon / (*theta_m * (1.0 - alpha)),
              alpha};
    }
  }
  throw std::logic_error("unhandled mode");
}

ConcentrationResult validate_concentration(const sim::TimeDistribution& dist, sim::Mode mode, int workers,
                                           double horizon, double alpha, int runs, Rng& rng) {
  if (runs < 100) throw std::invalid_argument("validate_concentration needs at least 100 runs");
  std::optional<double> theta_m;
  if (mode == sim::Mode::Synchronous && !expected_max(dist, workers).exact_max) {
    theta_m = mc_expected_max(dist, workers, 200'000, rng);
  }
  ConcentrationResult out{n_bounds(dist, mode, workers, horizon, alpha, theta_m), 0.0, 0.0, {}};

  sim::SimulationConfig config;
  config.mode = mode;
  config.workers = workers;
  config.horizon = horizon;
  config.strategy = acq::AcquisitionStrategy(acq::StrategyKind::Random);
  config.times = dist;
  const auto& objective = bench::get_benchmark(bench::BenchmarkId::Branin);

  long inside = 0;
  double total = 0.0;
  for (int r = 0; r < runs; ++r) {
    Rng run_rng(rng());
    const auto trace = sim::run_simulation(config, objective, run_rng);
    const long n = static_cast<long>(trace.records.size());
    out.counts.push_back(n);
    total += static_cast<double>(n);
    if (out.interval.contains(static_cast<double>(n))) ++inside;
  }
  out.coverage = static_cast<double>(inside) / runs;
  out.mean_count = total / runs;
  return out;
}

std::vector<TailPoint> exponential_max_tail(double lambda, int workers, const std::vector<double>& ts, long trials,
                                            Rng& rng) {
  if (trials < 1) throw std::invalid_argument("Monte Carlo needs at least one trial");
  const sim::TimeDistribution dist{sim::Exponential{lambda}};
  const double mean_max = harmonic(workers) / lambda;
  std::vector<long> hits(ts.size(), 0);
  for (long t = 0; t < trials; ++t) {
    double z = 0.0;
    for (int i = 0; i < workers; ++i) z = std::max(z, dist.sample(rng));
    for (size_t k = 0; k < ts.size(); ++k) {
      if (z - mean_max >= ts[k]) ++hits[k];
    }
  }
  std::vector<TailPoint> out;
  for (size_t k = 0; k < ts.size(); ++k) {
    out.push_back({ts[k], static_cast<double>(hits[k]) / static_cast<double>(trials),
                   2.0 * std::exp(-ts[k] * ts[k] * lambda * lambda / 8.0)});
  }
  return out;
}

}  // namespace ptsbo::theory
