#include "ptsbo/gp/hyperfit.hpp"

#include "ptsbo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ptsbo::gp {

namespace {

double log_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> unif(std::log(lo), std::log(hi));
  return std::exp(unif(rng));
}

}  // namespace

double median(const Eigen::Ref<const Eigen::VectorXd>& values) {
  if (values.size() == 0) throw std::invalid_argument("median of an empty sequence");
  std::vector<double> v(values.data(), values.data() + values.size());
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Hyperparameters fit_hyperparams(const Dataset& data, KernelFamily family, std::optional<double> noise_known,
                                int budget, Rng& rng, const HyperparameterRanges& ranges) {
  if (budget <= 0) throw std::invalid_argument("hyperparameter search budget must be positive");
  if (data.size() < 2) throw std::invalid_argument("hyperparameter fitting needs at least two observations");

  const double mean_const = median(data.values());
  const double mu = data.values().mean();
  double var = (data.values().array() - mu).square().sum() / static_cast<double>(data.size() - 1);
  if (!(var > 1e-12)) var = 1.0;

  std::optional<Hyperparameters> best;
  for (int trial = 0; trial < budget; ++trial) {
    std::vector<double> h(static_cast<size_t>(data.dim()));
    for (double& hi : h) hi = log_uniform(rng, ranges.bandwidth_min, ranges.bandwidth_max);
    const double scale = log_uniform(rng, ranges.scale_min_rel * var, ranges.scale_max_rel * var);
    const double noise_draw = log_uniform(rng, ranges.noise_min_rel * var, ranges.noise_max_rel * var);
    const double noise = noise_known.value_or(noise_draw);
    Kernel kernel(family, std::move(h), scale);
    double ll = -std::numeric_limits<double>::infinity();
    try {
      ll = log_marginal_likelihood(kernel, data, noise, mean_const);
    } catch (const NumericalError&) {
      continue;
    }
    if (!best || ll > best->log_likelihood) best = Hyperparameters{std::move(kernel), noise, mean_const, ll};
  }
  if (!best) throw NumericalError("every hyperparameter candidate produced a singular Gram matrix");
  return *best;
}

}  // namespace ptsbo::gp
