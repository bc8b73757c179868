#include "ptsbo/benchmarks/benchmarks.hpp"

#include "ptsbo/halton.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace ptsbo::bench {

namespace {

constexpr double kAlpha[4] = {1.0, 1.2, 3.0, 3.2};

constexpr double kH3A[4][3] = {{3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}};
constexpr double kH3P[4][3] = {{0.3689, 0.1170, 0.2673},
                               {0.4699, 0.4387, 0.7470},
                               {0.1091, 0.8732, 0.5547},
                               {0.0381, 0.5743, 0.8828}};

constexpr double kH6A[4][6] = {{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                               {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                               {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                               {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
constexpr double kH6P[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                               {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                               {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                               {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};

template <int D>
double hartmann(const Eigen::Ref<const Eigen::VectorXd>& u, const double (&a)[4][D], const double (&p)[4][D]) {
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < D; ++j) {
      const double diff = u[j] - p[i][j];
      inner += a[i][j] * diff * diff;
    }
    total += kAlpha[i] * std::exp(-inner);
  }
  return total;
}

// Maximizers and maxima from tests/oracles/benchmark_optima.py (Sobol sweep +
// bounded local refinement).
const Eigen::VectorXd kBraninArgmax = (Eigen::VectorXd(2) << (std::numbers::pi + 5.0) / 15.0, 2.275 / 15.0).finished();
constexpr double kBraninMax = -0.39788735772973816;
const Eigen::VectorXd kCurrinArgmax = (Eigen::VectorXd(2) << 13.0 / 60.0, 0.0).finished();
constexpr double kCurrinMax = 13.798722044728434;
const Eigen::VectorXd kHartmann3Argmax =
    (Eigen::VectorXd(3) << 0.11458888122541287, 0.5556488954739371, 0.8525469842172746).finished();
constexpr double kHartmann3Max = 3.862779787332663;
const Eigen::VectorXd kPark1Argmax = Eigen::VectorXd::Ones(4);
constexpr double kPark1Max = 25.589254158606547;
const Eigen::VectorXd kPark2Argmax = (Eigen::VectorXd(4) << 1.0, 1.0, 1.0, 0.0).finished();
constexpr double kPark2Max = 5.9260373992871003;
const Eigen::VectorXd kHartmann6Argmax =
    (Eigen::VectorXd(6) << 0.20168950909365746, 0.15001069354111374, 0.4768739729250998, 0.2753324275220782,
     0.3116516172395686, 0.6573005345536702)
        .finished();
constexpr double kHartmann6Max = 3.3223680114155147;

Eigen::VectorXd tile(const Eigen::VectorXd& piece, int copies) {
  Eigen::VectorXd out(piece.size() * copies);
  for (int c = 0; c < copies; ++c) out.segment(c * piece.size(), piece.size()) = piece;
  return out;
}

std::vector<Benchmark> make_registry() {
  // Noise levels: 0.2 on the base functions, 1.0 on the composed ones.
  return {
      {BenchmarkId::Branin, "Branin", 2, 0.2, kBraninMax, kBraninArgmax},
      {BenchmarkId::CurrinExp, "CurrinExp", 2, 0.2, kCurrinMax, kCurrinArgmax},
      {BenchmarkId::Hartmann3, "Hartmann3", 3, 0.2, kHartmann3Max, kHartmann3Argmax},
      {BenchmarkId::Park1, "Park1", 4, 0.2, kPark1Max, kPark1Argmax},
      {BenchmarkId::Park2, "Park2", 4, 0.2, kPark2Max, kPark2Argmax},
      {BenchmarkId::Hartmann6, "Hartmann6", 6, 0.2, kHartmann6Max, kHartmann6Argmax},
      {BenchmarkId::Hartmann12, "Hartmann12", 12, 1.0, 2.0 * kHartmann6Max, tile(kHartmann6Argmax, 2)},
      {BenchmarkId::Park2_16, "Park2-16", 16, 1.0, 4.0 * kPark2Max, tile(kPark2Argmax, 4)},
      {BenchmarkId::CurrinExp14, "CurrinExp-14", 14, 1.0, 7.0 * kCurrinMax, tile(kCurrinArgmax, 7)},
      {BenchmarkId::Hartmann18, "Hartmann18", 18, 1.0, 3.0 * kHartmann6Max, tile(kHartmann6Argmax, 3)},
  };
}

template <typename F>
double repeated(const Eigen::Ref<const Eigen::VectorXd>& x, int block, F&& f) {
  double total = 0.0;
  for (Eigen::Index start = 0; start < x.size(); start += block) total += f(x.segment(start, block));
  return total;
}

}  // namespace

namespace base {

// Negated Branin on x1 in [-5, 10], x2 in [0, 15]:
//   (x2 - 5.1/(4 pi^2) x1^2 + 5/pi x1 - 6)^2 + 10 (1 - 1/(8 pi)) cos(x1) + 10
double branin(const Eigen::Ref<const Eigen::VectorXd>& u) {
  const double x1 = -5.0 + 15.0 * u[0];
  const double x2 = 15.0 * u[1];
  const double pi = std::numbers::pi;
  const double b = 5.1 / (4.0 * pi * pi);
  const double c = 5.0 / pi;
  const double t = 1.0 / (8.0 * pi);
  const double q = x2 - b * x1 * x1 + c * x1 - 6.0;
  return -(q * q + 10.0 * (1.0 - t) * std::cos(x1) + 10.0);
}

// Natural domain is already [0,1]^2. The leading factor tends to 1 as x2 -> 0.
double currin_exp(const Eigen::Ref<const Eigen::VectorXd>& u) {
  const double x1 = u[0];
  const double x2 = u[1];
  const double lead = x2 > 0.0 ? 1.0 - std::exp(-1.0 / (2.0 * x2)) : 1.0;
  const double num = ((2300.0 * x1 + 1900.0) * x1 + 2092.0) * x1 + 60.0;
  const double den = ((100.0 * x1 + 500.0) * x1 + 4.0) * x1 + 20.0;
  return lead * num / den;
}

double hartmann3(const Eigen::Ref<const Eigen::VectorXd>& u) { return hartmann<3>(u, kH3A, kH3P); }

double hartmann6(const Eigen::Ref<const Eigen::VectorXd>& u) { return hartmann<6>(u, kH6A, kH6P); }

// x1/2 (sqrt(1 + (x2 + x3^2) x4 / x1^2) - 1) + (x1 + 3 x4) exp(1 + sin x3), written
// as 1/2 (sqrt(x1^2 + (x2 + x3^2) x4) - x1) so that x1 = 0 takes the limit value.
double park1(const Eigen::Ref<const Eigen::VectorXd>& u) {
  const double x1 = u[0], x2 = u[1], x3 = u[2], x4 = u[3];
  return 0.5 * (std::sqrt(x1 * x1 + (x2 + x3 * x3) * x4) - x1) + (x1 + 3.0 * x4) * std::exp(1.0 + std::sin(x3));
}

double park2(const Eigen::Ref<const Eigen::VectorXd>& u) {
  const double x1 = u[0], x2 = u[1], x3 = u[2], x4 = u[3];
  return 2.0 / 3.0 * std::exp(x1 + x2) - x4 * std::sin(x3) + x3;
}

}  // namespace base

const std::vector<Benchmark>& all_benchmarks() {
  static const std::vector<Benchmark> registry = make_registry();
  return registry;
}

const Benchmark& get_benchmark(BenchmarkId id) {
  for (const auto& b : all_benchmarks()) {
    if (b.id == id) return b;
  }
  throw std::invalid_argument("unknown benchmark id");
}

const Benchmark& benchmark_by_name(std::string_view name) {
  for (const auto& b : all_benchmarks()) {
    if (b.name == name) return b;
  }
  std::string known;
  for (const auto& b : all_benchmarks()) known += (known.empty() ? "" : ", ") + b.name;
  throw std::invalid_argument("unknown benchmark '" + std::string(name) + "' (known: " + known + ")");
}

double eval_clean(const Benchmark& b, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != b.dim) {
    throw std::invalid_argument(b.name + " expects " + std::to_string(b.dim) + " coordinates, got " +
                                std::to_string(x.size()));
  }
  if (x.minCoeff() < 0.0 || x.maxCoeff() > 1.0) {
    throw std::invalid_argument(b.name + " evaluated outside the unit cube");
  }
  switch (b.id) {
    case BenchmarkId::Branin: return base::branin(x);
    case BenchmarkId::CurrinExp: return base::currin_exp(x);
    case BenchmarkId::Hartmann3: return base::hartmann3(x);
    case BenchmarkId::Park1: return base::park1(x);
    case BenchmarkId::Park2: return base::park2(x);
    case BenchmarkId::Hartmann6: return base::hartmann6(x);
    case BenchmarkId::Hartmann12:
    case BenchmarkId::Hartmann18: return repeated(x, 6, base::hartmann6);
    case BenchmarkId::Park2_16: return repeated(x, 4, base::park2);
    case BenchmarkId::CurrinExp14: return repeated(x, 2, base::currin_exp);
  }
  throw std::logic_error("unhandled benchmark id");
}

double eval_noisy(const Benchmark& b, const Eigen::Ref<const Eigen::VectorXd>& x, double noise_sd, Rng& rng) {
  const double clean = eval_clean(b, x);
  if (noise_sd == 0.0) return clean;
  return clean + noise_sd * standard_normal(rng);
}

double eval_noisy(const Benchmark& b, const Eigen::Ref<const Eigen::VectorXd>& x, Rng& rng) {
  return eval_noisy(b, x, b.noise_sd, rng);
}

double worst_deviation(const Benchmark& b) {
  static std::mutex mutex;
  static std::map<BenchmarkId, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(b.id); it != cache.end()) return it->second;
  }
  constexpr long kSweep = 1'000'000;
  double lowest = b.opt_value;
  Eigen::VectorXd x(b.dim);
  for (long i = 1; i <= kSweep; ++i) {
    for (int k = 0; k < b.dim; ++k) x[k] = halton(i, k);
    lowest = std::min(lowest, eval_clean(b, x));
  }
  const double dev = b.opt_value - lowest;
  std::lock_guard lock(mutex);
  cache.emplace(b.id, dev);
  return dev;
}

}  // namespace ptsbo::bench
