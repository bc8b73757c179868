#include "ptsbo/gp/posterior.hpp"

#include "ptsbo/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptsbo::gp {

namespace {

constexpr double kFirstJitter = 1e-10;
constexpr double kMaxJitter = 1e-4;
// Negative eigenvalues below this (relative to the kernel scale) mean the
// covariance is genuinely indefinite rather than rounded.
constexpr double kIndefiniteTolerance = 1e-6;

void check_unit_cube(const Eigen::Ref<const Eigen::MatrixXd>& points) {
  if (points.size() > 0 && (points.minCoeff() < 0.0 || points.maxCoeff() > 1.0)) {
    throw std::invalid_argument("dataset points must lie in the unit cube");
  }
}

}  // namespace

Dataset::Dataset(int dim) : points_(0, dim), values_(0) {
  if (dim <= 0) throw std::invalid_argument("dataset dimension must be positive");
}

Dataset::Dataset(Eigen::MatrixXd points, Eigen::VectorXd values)
    : points_(std::move(points)), values_(std::move(values)) {
  if (points_.rows() != values_.size()) {
    throw std::invalid_argument("dataset has " + std::to_string(points_.rows()) + " points but " +
                                std::to_string(values_.size()) + " values");
  }
  if (points_.cols() <= 0) throw std::invalid_argument("dataset dimension must be positive");
  check_unit_cube(points_);
}

void Dataset::add(const Eigen::Ref<const Eigen::VectorXd>& x, double y) {
  if (x.size() != points_.cols()) throw std::invalid_argument("point dimension does not match dataset");
  check_unit_cube(x.transpose());
  const Eigen::Index n = points_.rows();
  points_.conservativeResize(n + 1, Eigen::NoChange);
  points_.row(n) = x.transpose();
  values_.conservativeResize(n + 1);
  values_[n] = y;
}

GramFactor factorize_gram(const Eigen::MatrixXd& gram, double scale) {
  GramFactor out;
  out.llt.compute(gram);
  if (out.llt.info() == Eigen::Success) return out;
  Eigen::MatrixXd work = gram;
  for (double rel = kFirstJitter; rel <= kMaxJitter * 1.0000001; rel *= 10.0) {
    work.diagonal() = gram.diagonal().array() + rel * scale;
    out.llt.compute(work);
    if (out.llt.info() == Eigen::Success) {
      out.jitter = rel * scale;
      return out;
    }
  }
  throw NumericalError("Gram matrix (K + noise I) is numerically singular: Cholesky failed with jitter up to " +
                       std::to_string(kMaxJitter * scale));
}

GpPosterior::GpPosterior(Kernel kernel, Dataset data, double noise_var, double mean_const)
    : kernel_(std::move(kernel)), data_(std::move(data)), noise_var_(noise_var), mean_const_(mean_const) {
  if (data_.dim() != kernel_.dim()) throw std::invalid_argument("dataset dimension does not match kernel");
  if (!(noise_var_ >= 0.0)) throw std::invalid_argument("noise variance must be non-negative");
  if (data_.empty()) return;
  Eigen::MatrixXd gram = kernel_.gram(data_.points());
  gram.diagonal().array() += noise_var_;
  factor_ = factorize_gram(gram, kernel_.scale());
  weights_ = factor_.llt.solve((data_.values().array() - mean_const_).matrix());
}

GpPosterior condition(const Kernel& kernel, Dataset data, double noise_var, double mean_const) {
  return GpPosterior(kernel, std::move(data), noise_var, mean_const);
}

double GpPosterior::mean(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return moments(x.transpose()).mean[0];
}

double GpPosterior::variance(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return moments(x.transpose()).variance[0];
}

GpPosterior::Moments GpPosterior::moments(const Eigen::Ref<const Eigen::MatrixXd>& xs) const {
  Moments out;
  out.variance = Eigen::VectorXd::Constant(xs.rows(), kernel_.scale());
  if (data_.empty()) {
    if (xs.rows() > 0 && xs.cols() != kernel_.dim()) throw std::invalid_argument("query dimension mismatch");
    out.mean = Eigen::VectorXd::Constant(xs.rows(), mean_const_);
    return out;
  }
  const Eigen::MatrixXd k_dq = kernel_.cross(data_.points(), xs);
  out.mean = (k_dq.transpose() * weights_).array() + mean_const_;
  const Eigen::MatrixXd v = factor_.llt.matrixL().solve(k_dq);
  out.variance -= v.colwise().squaredNorm().transpose();
  out.variance = out.variance.cwiseMax(0.0);
  return out;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> GpPosterior::joint(
    const Eigen::Ref<const Eigen::MatrixXd>& xs) const {
  Eigen::MatrixXd cov = kernel_.gram(xs);
  if (data_.empty()) return {Eigen::VectorXd::Constant(xs.rows(), mean_const_), std::move(cov)};
  const Eigen::MatrixXd k_dq = kernel_.cross(data_.points(), xs);
  Eigen::VectorXd mu = (k_dq.transpose() * weights_).array() + mean_const_;
  const Eigen::MatrixXd v = factor_.llt.matrixL().solve(k_dq);
  cov.selfadjointView<Eigen::Lower>().rankUpdate(v.transpose(), -1.0);
  cov.triangularView<Eigen::StrictlyUpper>() = cov.transpose();
  cov.diagonal() = cov.diagonal().cwiseMax(0.0);
  return {std::move(mu), std::move(cov)};
}

Eigen::VectorXd sample_joint(const GpPosterior& post, const Eigen::Ref<const Eigen::MatrixXd>& candidates,
                             Rng& rng) {
  if (candidates.rows() == 0) throw std::invalid_argument("sample_joint needs at least one candidate");
  check_unit_cube(candidates);
  auto [mu, cov] = post.joint(candidates);
  const Eigen::Index c = candidates.rows();
  Eigen::VectorXd z(c);
  for (Eigen::Index i = 0; i < c; ++i) z[i] = standard_normal(rng);

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) return mu + llt.matrixL() * z;

  // Semidefinite fallback: eigendecomposition with rounding-level negative eigenvalues clamped.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw NumericalError("posterior covariance eigendecomposition failed");
  Eigen::VectorXd lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -kIndefiniteTolerance * post.kernel().scale()) {
    throw NumericalError("posterior covariance is not positive semi-definite (eigenvalue " +
                         std::to_string(lambda.minCoeff()) + ")");
  }
  lambda = lambda.cwiseMax(0.0).cwiseSqrt();
  return mu + eig.eigenvectors() * lambda.cwiseProduct(z);
}

double log_marginal_likelihood(const Kernel& kernel, const Dataset& data, double noise_var, double mean_const) {
  if (data.empty()) throw std::invalid_argument("log marginal likelihood needs at least one observation");
  if (data.dim() != kernel.dim()) throw std::invalid_argument("dataset dimension does not match kernel");
  Eigen::MatrixXd gram = kernel.gram(data.points());
  gram.diagonal().array() += noise_var;
  const GramFactor factor = factorize_gram(gram, kernel.scale());
  const Eigen::VectorXd z = data.values().array() - mean_const;
  const Eigen::VectorXd half = factor.llt.matrixL().solve(z);
  const double log_det = 2.0 * factor.llt.matrixLLT().diagonal().array().log().sum();
  const double n = static_cast<double>(data.size());
  return -0.5 * half.squaredNorm() - 0.5 * log_det - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

}  // namespace ptsbo::gp
