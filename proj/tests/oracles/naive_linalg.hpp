#pragma once

// Reference implementations for tests: plain nested vectors, Gaussian
// elimination with partial pivoting, no Eigen.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline double se(const Vec& x, const Vec& y, const Vec& h, double scale) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]) / (2.0 * h[i] * h[i]);
  return scale * std::exp(-s);
}

inline double matern52(const Vec& x, const Vec& y, const Vec& h, double scale) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]) / (h[i] * h[i]);
  const double r = std::sqrt(s);
  return scale * (1.0 + std::sqrt(5.0) * r + 5.0 * s / 3.0) * std::exp(-std::sqrt(5.0) * r);
}

inline double kern(bool matern, const Vec& x, const Vec& y, const Vec& h, double scale) {
  return matern ? matern52(x, y, h, scale) : se(x, y, h, scale);
}

// Inverse and log|det| by Gauss-Jordan elimination.
inline std::pair<Mat, double> invert(Mat a) {
  const size_t n = a.size();
  Mat inv(n, Vec(n, 0.0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  double logdet = 0.0;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    for (size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    if (a[p][c] == 0.0) throw std::runtime_error("singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const double piv = a[c][c];
    logdet += std::log(std::abs(piv));
    for (size_t k = 0; k < n; ++k) {
      a[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0.0) continue;
      const double f = a[r][c];
      for (size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return {inv, logdet};
}

inline Vec matvec(const Mat& a, const Vec& v) {
  Vec out(a.size(), 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  }
  return out;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Lower Cholesky of a small dense matrix.
inline Mat cholesky(const Mat& a) {
  const size_t n = a.size();
  Mat l(n, Vec(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      l[i][j] = i == j ? std::sqrt(std::max(s, 0.0)) : (l[j][j] > 0.0 ? s / l[j][j] : 0.0);
    }
  }
  return l;
}

struct Gp {
  bool matern;
  Vec h;
  double scale;
  double noise;
  double c;
  Mat xs;
  Vec ys;

  Mat gram_inverse(double* logdet = nullptr) const {
    Mat k(xs.size(), Vec(xs.size()));
    for (size_t i = 0; i < xs.size(); ++i) {
      for (size_t j = 0; j < xs.size(); ++j) k[i][j] = kern(matern, xs[i], xs[j], h, scale) + (i == j ? noise : 0.0);
    }
    auto [inv, ld] = invert(k);
    if (logdet) *logdet = ld;
    return inv;
  }

  Vec kvec(const Vec& x) const {
    Vec k;
    for (const auto& xi : xs) k.push_back(kern(matern, x, xi, h, scale));
    return k;
  }

  double mean(const Vec& x) const {
    if (xs.empty()) return c;
    Vec z;
    for (double y : ys) z.push_back(y - c);
    return c + dot(kvec(x), matvec(gram_inverse(), z));
  }

  double cov(const Vec& x, const Vec& y) const {
    const double prior = kern(matern, x, y, h, scale);
    if (xs.empty()) return prior;
    return prior - dot(kvec(x), matvec(gram_inverse(), kvec(y)));
  }

  double var(const Vec& x) const { return cov(x, x); }

  double lml() const {
    double logdet = 0.0;
    const Mat inv = gram_inverse(&logdet);
    Vec z;
    for (double y : ys) z.push_back(y - c);
    return -0.5 * dot(z, matvec(inv, z)) - 0.5 * logdet - 0.5 * static_cast<double>(xs.size()) * std::log(2.0 * M_PI);
  }
};

// 1/2 log det(I + K / noise)
inline double info_gain(bool matern, const Vec& h, double scale, double noise, const Mat& pts) {
  if (pts.empty()) return 0.0;
  Mat m(pts.size(), Vec(pts.size()));
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = 0; j < pts.size(); ++j) m[i][j] = kern(matern, pts[i], pts[j], h, scale) / noise + (i == j ? 1.0 : 0.0);
  }
  return 0.5 * invert(m).second;
}

}  // namespace oracle
