#pragma once

#include "ptsbo/gp/kernel.hpp"
#include "ptsbo/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace ptsbo::gp {

/// Observations on the unit cube: one point per row of `points`.
class Dataset {
 public:
  explicit Dataset(int dim);
  Dataset(Eigen::MatrixXd points, Eigen::VectorXd values);

  void add(const Eigen::Ref<const Eigen::VectorXd>& x, double y);

  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::VectorXd& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  int dim() const { return static_cast<int>(points_.cols()); }
  bool empty() const { return values_.size() == 0; }

 private:
  Eigen::MatrixXd points_;
  Eigen::VectorXd values_;
};

/// Cholesky factor of K + noise*I with the diagonal jitter that was needed.
struct GramFactor {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
};

/// Factorizes `gram` (already including the noise term). The first attempt
/// adds nothing; on failure the diagonal jitter starts at 1e-10*scale and
/// grows by 10x up to 1e-4*scale. Throws NumericalError when all fail.
GramFactor factorize_gram(const Eigen::MatrixXd& gram, double scale);

/// Immutable GP conditioned on a dataset. Safe to share between threads.
class GpPosterior {
 public:
  struct Moments {
    Eigen::VectorXd mean;
    Eigen::VectorXd variance;
  };

  const Kernel& kernel() const { return kernel_; }
  const Dataset& data() const { return data_; }
  double noise_var() const { return noise_var_; }
  double mean_const() const { return mean_const_; }
  double jitter() const { return factor_.jitter; }

  double mean(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  double variance(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// Pointwise mean and variance at each row of `xs`.
  Moments moments(const Eigen::Ref<const Eigen::MatrixXd>& xs) const;

  /// Posterior mean vector and full covariance over the rows of `xs`.
  std::pair<Eigen::VectorXd, Eigen::MatrixXd> joint(const Eigen::Ref<const Eigen::MatrixXd>& xs) const;

 private:
  friend GpPosterior condition(const Kernel&, Dataset, double, double);
  GpPosterior(Kernel kernel, Dataset data, double noise_var, double mean_const);

  Kernel kernel_;
  Dataset data_;
  double noise_var_;
  double mean_const_;
  GramFactor factor_;
  Eigen::VectorXd weights_;  // (K + noise I)^{-1} (y - mean_const)
};

/// mean(x) = c + k^T (K + noise I)^{-1} (y - c);  var(x) = k(x,x) - k^T (K + noise I)^{-1} k.
GpPosterior condition(const Kernel& kernel, Dataset data, double noise_var, double mean_const);

/// One draw of the posterior process restricted to the rows of `candidates`.
Eigen::VectorXd sample_joint(const GpPosterior& post, const Eigen::Ref<const Eigen::MatrixXd>& candidates,
                             Rng& rng);

/// -1/2 z^T (K + noise I)^{-1} z - 1/2 log det(K + noise I) - n/2 log(2 pi), z = y - c.
double log_marginal_likelihood(const Kernel& kernel, const Dataset& data, double noise_var, double mean_const);

}  // namespace ptsbo::gp
