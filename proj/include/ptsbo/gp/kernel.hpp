#pragma once

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace ptsbo::gp {

enum class KernelFamily { SquaredExponential, Matern52 };

std::string_view to_string(KernelFamily family);
KernelFamily kernel_family_from_string(std::string_view name);

/// Stationary covariance with one bandwidth per input dimension.
///
/// SE:        scale * exp(-sum_i (x_i - x'_i)^2 / (2 h_i^2))
/// Matern5/2: scale * (1 + sqrt5 r + 5 r^2 / 3) * exp(-sqrt5 r),
///            r = sqrt(sum_i (x_i - x'_i)^2 / h_i^2)
class Kernel {
 public:
  Kernel(KernelFamily family, std::vector<double> bandwidths, double scale);

  /// Isotropic convenience constructor.
  static Kernel isotropic(KernelFamily family, int dim, double bandwidth, double scale);

  KernelFamily family() const { return family_; }
  const std::vector<double>& bandwidths() const { return bandwidths_; }
  double scale() const { return scale_; }
  int dim() const { return static_cast<int>(bandwidths_.size()); }

  double operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y) const;

  /// Cross-covariance between the rows of `a` and the rows of `b`.
  Eigen::MatrixXd cross(const Eigen::Ref<const Eigen::MatrixXd>& a,
                        const Eigen::Ref<const Eigen::MatrixXd>& b) const;

  /// Covariance matrix of the rows of `a` (exactly symmetric).
  Eigen::MatrixXd gram(const Eigen::Ref<const Eigen::MatrixXd>& a) const;

  bool operator==(const Kernel&) const = default;

 private:
  double from_scaled_sqdist(double r2) const;

  KernelFamily family_;
  std::vector<double> bandwidths_;
  double scale_;
};

double kernel_eval(const Kernel& kernel, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y);

}  // namespace ptsbo::gp
