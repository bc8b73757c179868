#pragma once

#include "oracles/naive_linalg.hpp"
#include "ptsbo/gp/kernel.hpp"
#include "ptsbo/rng.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace testing {

inline oracle::Vec to_vec(const Eigen::Ref<const Eigen::VectorXd>& v) { return {v.data(), v.data() + v.size()}; }

inline oracle::Mat to_mat(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  oracle::Mat out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_vec(m.row(i).transpose()));
  return out;
}

inline Eigen::MatrixXd uniform_points(int n, int d, ptsbo::Rng& rng) {
  Eigen::MatrixXd x(n, d);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) x(i, k) = ptsbo::uniform01(rng);
  }
  return x;
}

inline double log_uniform(ptsbo::Rng& rng, double lo, double hi) {
  return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * ptsbo::uniform01(rng));
}

// |a - b| <= tol * max(|b|, floor)
inline bool close_rel(double a, double b, double tol, double floor = 1.0) {
  return std::abs(a - b) <= tol * std::max(std::abs(b), floor);
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ptsbo_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace testing
