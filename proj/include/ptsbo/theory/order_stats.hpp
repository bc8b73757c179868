#pragma once

#include "ptsbo/rng.hpp"
#include "ptsbo/sim/scheduler.hpp"
#include "ptsbo/sim/time_distribution.hpp"

#include <optional>
#include <vector>

namespace ptsbo::theory {

/// h_M = sum_{i=1}^M 1/i
double harmonic(int m);

/// Mean of one evaluation time (theta) and of the maximum of M of them (theta_M).
struct MaxStats {
  sim::TimeDistribution dist;
  int workers;
  double expected_single;
  std::optional<double> exact_max;    // uniform (a+bM)/(M+1), exponential h_M/lambda
  std::optional<double> upper_bound;  // half-normal zeta sqrt(2 log 2M)
  std::optional<double> mc_max;       // Monte Carlo estimate when trials were requested

  /// exact_max when known, otherwise the Monte Carlo estimate.
  std::optional<double> theta_max() const { return exact_max ? exact_max : mc_max; }
};

MaxStats expected_max(const sim::TimeDistribution& dist, int workers);
MaxStats expected_max(const sim::TimeDistribution& dist, int workers, long trials, Rng& rng);

/// Sample mean of max(X_1..X_M) over `trials` draws.
double mc_expected_max(const sim::TimeDistribution& dist, int workers, long trials, Rng& rng);

/// Order statistics of M Exp(lambda) draws via exponential spacings:
/// X_(i) = sum_{k=i}^{M} E_k / k, returned largest first.
std::vector<double> renyi_order_statistics(int m, double lambda, Rng& rng);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

struct NBoundInterval {
  sim::Mode mode;
  double lower;
  double upper;
  double alpha;
  bool contains(double n) const { return n > lower && n < upper; }
};

/// Prediction interval for the number of completed evaluations by time T:
///   sequential   (T/(theta(1+a)) - 1,        T/(theta(1-a)))
///   synchronous  (M(T/(theta_M(1+a)) - 1),   MT/(theta_M(1-a)))
///   asynchronous (M(T/(theta(1+a)) - 1),     MT/(theta(1-a)))
/// Synchronous intervals for half-normal or Pareto times need `theta_max_estimate`.
NBoundInterval n_bounds(const sim::TimeDistribution& dist, sim::Mode mode, int workers, double horizon, double alpha,
                        std::optional<double> theta_max_estimate = std::nullopt);

struct ConcentrationResult {
  NBoundInterval interval;
  double coverage;
  double mean_count;
  std::vector<long> counts;
};

/// Simulates `runs` random-search traces and reports how often N(T) lands in n_bounds.
ConcentrationResult validate_concentration(const sim::TimeDistribution& dist, sim::Mode mode, int workers,
                                           double horizon, double alpha, int runs, Rng& rng);

struct TailPoint {
  double t;
  double empirical;  // P(Z - EZ >= t)
  double bound;      // 2 exp(-t^2 lambda^2 / 8)
};

/// Upper tail of the maximum of M Exp(lambda) draws against its sub-exponential
/// bound; only meaningful for t <= 2/lambda.
std::vector<TailPoint> exponential_max_tail(double lambda, int workers, const std::vector<double>& ts, long trials,
                                            Rng& rng);

}  // namespace ptsbo::theory
