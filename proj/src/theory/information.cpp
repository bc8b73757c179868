#include "ptsbo/theory/information.hpp"

#include "ptsbo/acquisition/acquisition.hpp"
#include "ptsbo/errors.hpp"
#include "ptsbo/gp/posterior.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptsbo::theory {

double info_gain(const gp::Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& points, double noise_var) {
  if (!(noise_var > 0.0)) throw std::invalid_argument("info_gain needs a positive noise variance");
  if (points.rows() == 0) return 0.0;
  Eigen::MatrixXd m = kernel.gram(points) / noise_var;
  m.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw NumericalError("I + K/noise is not positive definite");
  return llt.matrixLLT().diagonal().array().log().sum();
}

double conditional_info_gain(const gp::Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& set_a,
                             const Eigen::Ref<const Eigen::MatrixXd>& set_b, double noise_var) {
  for (Eigen::Index i = 0; i < set_a.rows(); ++i) {
    for (Eigen::Index j = 0; j < set_b.rows(); ++j) {
      if (set_a.row(i) == set_b.row(j)) throw std::invalid_argument("conditional_info_gain: A and B overlap");
    }
  }
  if (set_b.rows() == 0) return 0.0;
  Eigen::MatrixXd joined(set_a.rows() + set_b.rows(), kernel.dim());
  joined << set_a, set_b;
  return info_gain(kernel, joined, noise_var) - info_gain(kernel, set_a, noise_var);
}

GreedyMig greedy_mig(const gp::Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& candidates, int n,
                     double noise_var) {
  if (n < 0 || n > candidates.rows()) throw std::invalid_argument("greedy_mig: n must be in [0, |candidates|]");
  GreedyMig out;
  gp::Dataset chosen(kernel.dim());
  for (int step = 0; step < n; ++step) {
    const auto post = gp::condition(kernel, chosen, noise_var, 0.0);
    Eigen::VectorXd var = post.moments(candidates).variance;
    for (auto idx : out.indices) var[idx] = -1.0;  // already selected
    const Eigen::Index best = acq::argmax(var);
    out.indices.push_back(best);
    out.increments.push_back(0.5 * std::log1p(var[best] / noise_var));
    chosen.add(candidates.row(best).transpose(), 0.0);
  }
  out.points = chosen.points();
  out.gain = info_gain(kernel, out.points, noise_var);
  return out;
}

double beta_n(double n, int d, double a, double b) {
  if (!(n >= 1.0) || d < 1 || !(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta_n needs n >= 1 and d, a, b > 0");
  return 4.0 * (d + 1) * std::log(n) + 2.0 * d * std::log(d * a * b * std::sqrt(std::numbers::pi));
}

VarianceSumCheck variance_sum_check(const gp::Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& sequence,
                                    double noise_var) {
  if (sequence.rows() == 0) throw std::invalid_argument("variance_sum_check needs a non-empty sequence");
  double lhs = 0.0;
  gp::Dataset seen(kernel.dim());
  for (Eigen::Index j = 0; j < sequence.rows(); ++j) {
    const auto post = gp::condition(kernel, seen, noise_var, 0.0);
    lhs += post.variance(sequence.row(j).transpose());
    seen.add(sequence.row(j).transpose(), 0.0);
  }
  const double rhs = 2.0 / std::log1p(1.0 / noise_var) * info_gain(kernel, sequence, noise_var);
  return {lhs, rhs, lhs <= rhs + 1e-8};
}

}  // namespace ptsbo::theory
