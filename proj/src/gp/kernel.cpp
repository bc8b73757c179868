#include "ptsbo/gp/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace ptsbo::gp {

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::SquaredExponential:
      return "se";
    case KernelFamily::Matern52:
      return "matern52";
  }
  return "se";
}

KernelFamily kernel_family_from_string(std::string_view name) {
  if (name == "se" || name == "SquaredExponential") return KernelFamily::SquaredExponential;
  if (name == "matern52" || name == "Matern52") return KernelFamily::Matern52;
  throw std::invalid_argument("unknown kernel family '" + std::string(name) + "'");
}

Kernel::Kernel(KernelFamily family, std::vector<double> bandwidths, double scale)
    : family_(family), bandwidths_(std::move(bandwidths)), scale_(scale) {
  if (bandwidths_.empty()) throw std::invalid_argument("kernel needs at least one dimension");
  for (double h : bandwidths_) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("kernel bandwidths must be positive");
  }
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw std::invalid_argument("kernel scale must be positive");
}

Kernel Kernel::isotropic(KernelFamily family, int dim, double bandwidth, double scale) {
  return Kernel(family, std::vector<double>(static_cast<size_t>(dim), bandwidth), scale);
}

double Kernel::from_scaled_sqdist(double r2) const {
  if (family_ == KernelFamily::SquaredExponential) return scale_ * std::exp(-0.5 * r2);
  const double sr = std::sqrt(5.0 * r2);
  return scale_ * (1.0 + sr + 5.0 * r2 / 3.0) * std::exp(-sr);
}

double Kernel::operator()(const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw std::invalid_argument("kernel dimension mismatch: kernel has dim " + std::to_string(dim()) +
                                ", inputs have " + std::to_string(x.size()) + " and " +
                                std::to_string(y.size()));
  }
  double r2 = 0.0;
  for (int i = 0; i < dim(); ++i) {
    const double u = (x[i] - y[i]) / bandwidths_[static_cast<size_t>(i)];
    r2 += u * u;
  }
  return from_scaled_sqdist(r2);
}

Eigen::MatrixXd Kernel::cross(const Eigen::Ref<const Eigen::MatrixXd>& a,
                              const Eigen::Ref<const Eigen::MatrixXd>& b) const {
  if ((a.rows() > 0 && a.cols() != dim()) || (b.rows() > 0 && b.cols() != dim())) {
    throw std::invalid_argument("kernel dimension mismatch in cross-covariance");
  }
  Eigen::RowVectorXd inv_h(dim());
  for (int i = 0; i < dim(); ++i) inv_h[i] = 1.0 / bandwidths_[static_cast<size_t>(i)];
  const Eigen::MatrixXd sa = a.array().rowwise() * inv_h.array();
  const Eigen::MatrixXd sb = b.array().rowwise() * inv_h.array();
  Eigen::MatrixXd out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out(i, j) = from_scaled_sqdist((sa.row(i) - sb.row(j)).squaredNorm());
    }
  }
  return out;
}

Eigen::MatrixXd Kernel::gram(const Eigen::Ref<const Eigen::MatrixXd>& a) const {
  if (a.rows() > 0 && a.cols() != dim()) throw std::invalid_argument("kernel dimension mismatch in gram");
  Eigen::RowVectorXd inv_h(dim());
  for (int i = 0; i < dim(); ++i) inv_h[i] = 1.0 / bandwidths_[static_cast<size_t>(i)];
  const Eigen::MatrixXd sa = a.array().rowwise() * inv_h.array();
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out(j, j) = scale_;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = from_scaled_sqdist((sa.row(i) - sa.row(j)).squaredNorm());
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

double kernel_eval(const Kernel& kernel, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  return kernel(x, y);
}

}  // namespace ptsbo::gp
