#pragma once

#include "ptsbo/rng.hpp"

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace ptsbo::bench {

enum class BenchmarkId {
  Branin,
  CurrinExp,
  Hartmann3,
  Park1,
  Park2,
  Hartmann6,
  Hartmann12,
  Park2_16,
  CurrinExp14,
  Hartmann18,
};

/// A synthetic objective on [0,1]^dim, maximized. `argmax` is the recorded
/// maximizer (concatenated component maximizers for composed functions).
struct Benchmark {
  BenchmarkId id;
  std::string name;
  int dim;
  double noise_sd;
  double opt_value;
  Eigen::VectorXd argmax;
};

const std::vector<Benchmark>& all_benchmarks();
const Benchmark& get_benchmark(BenchmarkId id);
/// Registry lookup by name ("Branin", "Park2-16", ...). Throws std::invalid_argument.
const Benchmark& benchmark_by_name(std::string_view name);

/// Noise-free value. Throws std::invalid_argument outside the unit cube.
double eval_clean(const Benchmark& b, const Eigen::Ref<const Eigen::VectorXd>& x);

/// eval_clean plus N(0, noise_sd^2).
double eval_noisy(const Benchmark& b, const Eigen::Ref<const Eigen::VectorXd>& x, Rng& rng);
double eval_noisy(const Benchmark& b, const Eigen::Ref<const Eigen::VectorXd>& x, double noise_sd, Rng& rng);

/// max_x |opt - f(x)| estimated by a 10^6-point Halton sweep; cached per benchmark.
double worst_deviation(const Benchmark& b);

// Base functions on the unit cube, used by the composed benchmarks.
namespace base {
double branin(const Eigen::Ref<const Eigen::VectorXd>& u);
double currin_exp(const Eigen::Ref<const Eigen::VectorXd>& u);
double hartmann3(const Eigen::Ref<const Eigen::VectorXd>& u);
double hartmann6(const Eigen::Ref<const Eigen::VectorXd>& u);
double park1(const Eigen::Ref<const Eigen::VectorXd>& u);
double park2(const Eigen::Ref<const Eigen::VectorXd>& u);
}  // namespace base

}  // namespace ptsbo::bench
