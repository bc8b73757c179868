#pragma once

#include "ptsbo/gp/kernel.hpp"
#include "ptsbo/gp/posterior.hpp"
#include "ptsbo/rng.hpp"

#include <optional>

namespace ptsbo::gp {

struct Hyperparameters {
  Kernel kernel;
  double noise_var;
  double mean_const;
  double log_likelihood;
};

// Random-search box, relative to the sample variance v of the observations.
struct HyperparameterRanges {
  double bandwidth_min = 0.01;
  double bandwidth_max = 2.0;
  double scale_min_rel = 0.1;
  double scale_max_rel = 10.0;
  double noise_min_rel = 1e-4;
  double noise_max_rel = 1.0;
};

double median(const Eigen::Ref<const Eigen::VectorXd>& values);

/// Type-II maximum likelihood by random log-uniform search. The mean constant
/// is the median of the observations; `noise_known` pins the noise variance.
Hyperparameters fit_hyperparams(const Dataset& data, KernelFamily family, std::optional<double> noise_known,
                                int budget, Rng& rng, const HyperparameterRanges& ranges = {});

}  // namespace ptsbo::gp
