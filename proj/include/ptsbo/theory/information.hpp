#pragma once

#include "ptsbo/gp/kernel.hpp"

#include <Eigen/Core>

#include <vector>

namespace ptsbo::theory {

/// Mutual information between f and noisy observations at the rows of
/// `points`: 1/2 log det(I + K / noise_var).
double info_gain(const gp::Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& points, double noise_var);

/// I(f; y_B | y_A) = info_gain(A u B) - info_gain(A). A and B must not share rows.
double conditional_info_gain(const gp::Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& set_a,
                             const Eigen::Ref<const Eigen::MatrixXd>& set_b, double noise_var);

struct GreedyMig {
  std::vector<Eigen::Index> indices;  // rows of the candidate matrix, in selection order
  Eigen::MatrixXd points;
  std::vector<double> increments;  // marginal gain of each selection
  double gain;                     // info_gain of the selected set
};

/// Greedy lower bound on the maximum information gain over `n` candidates.
/// Each step adds the candidate with the largest marginal gain
/// 1/2 log(1 + sigma^2(x) / noise_var); ties go to the lowest index.
GreedyMig greedy_mig(const gp::Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& candidates, int n,
                     double noise_var);

/// 4(d+1) log n + 2d log(d a b sqrt(pi))
double beta_n(double n, int d, double a, double b);

struct VarianceSumCheck {
  double lhs;  // sum_j sigma^2_{j-1}(x_j)
  double rhs;  // 2 / log(1 + 1/noise_var) * info_gain(sequence)
  bool holds;
};

/// Sum of predictive variances along a query sequence against the
/// information-gain bound, using the achieved gain of the same sequence.
VarianceSumCheck variance_sum_check(const gp::Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& sequence,
                                    double noise_var);

}  // namespace ptsbo::theory
