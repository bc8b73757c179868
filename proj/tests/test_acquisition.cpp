#include "support.hpp"

#include "ptsbo/acquisition/acquisition.hpp"
#include "ptsbo/gp/posterior.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace ptsbo;
using namespace ptsbo::acq;
using gp::Dataset;
using gp::Kernel;
using gp::KernelFamily;

namespace {

Eigen::MatrixXd grid_1d(int n) {
  Eigen::MatrixXd g(n, 1);
  for (int i = 0; i < n; ++i) g(i, 0) = n == 1 ? 0.5 : static_cast<double>(i) / (n - 1);
  return g;
}

// Fixed posterior over five well-separated points with distinct means and correlated noise.
gp::GpPosterior five_point_posterior() {
  const Kernel k(KernelFamily::SquaredExponential, {0.25}, 1.0);
  Eigen::MatrixXd x(3, 1);
  x << 0.1, 0.45, 0.9;
  Eigen::VectorXd y(3);
  y << 0.4, 0.9, 0.2;
  return gp::condition(k, Dataset(x, y), 0.3, 0.0);
}

}  // namespace

TEST_CASE("strategy names and parameters") {
  for (auto k : {StrategyKind::TS, StrategyKind::HallucinatedTS, StrategyKind::UCB, StrategyKind::HallucinatedUCB,
                 StrategyKind::EI, StrategyKind::Random}) {
    CHECK(strategy_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS(strategy_kind_from_string("PI"));
  CHECK(AcquisitionStrategy(StrategyKind::UCB).param("beta_coefficient") == 0.2);
  CHECK(AcquisitionStrategy(StrategyKind::UCB, {{"beta_coefficient", 0.5}}).param("beta_coefficient") == 0.5);
  CHECK_THROWS_AS(AcquisitionStrategy(StrategyKind::TS, {{"beta_coefficient", 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(AcquisitionStrategy(StrategyKind::UCB, {{"kappa", 1.0}}), std::invalid_argument);
  CHECK(AcquisitionStrategy(StrategyKind::HallucinatedTS).hallucinates());
  CHECK_FALSE(AcquisitionStrategy(StrategyKind::Random).uses_model());
}

TEST_CASE("argmax takes the lowest index on ties") {
  Eigen::VectorXd v(5);
  v << 1, 3, 2, 3, 0;
  CHECK(argmax(v) == 1);
  CHECK(argmax(Eigen::VectorXd::Zero(4)) == 0);
}

TEST_CASE("quasi-uniform candidates lie in the cube and depend on the seed") {
  Rng a(1), b(1), c(2);
  const auto x = quasi_uniform_candidates(500, 6, a);
  CHECK(x.rows() == 500);
  CHECK(x.minCoeff() >= 0.0);
  CHECK(x.maxCoeff() < 1.0);
  CHECK(x == quasi_uniform_candidates(500, 6, b));
  CHECK(x != quasi_uniform_candidates(500, 6, c));
  // Low discrepancy: each half of every axis holds close to half the points.
  for (int k = 0; k < 6; ++k) {
    const long low = (x.col(k).array() < 0.5).count();
    CHECK(std::abs(low - 250) <= 10);
  }
}

TEST_CASE("TS with one candidate returns it") {
  const auto post = five_point_posterior();
  Eigen::MatrixXd one(1, 1);
  one << 0.77;
  Rng rng(3);
  CHECK(select_ts(post, one, rng)[0] == 0.77);
}

TEST_CASE("TS follows the posterior argmax law on a five-point domain") {
  const auto post = five_point_posterior();
  const Eigen::MatrixXd dom = grid_1d(5);

  // Independent oracle: naive Cholesky sampling from the dense-solve moments.
  oracle::Gp ref{false, {0.25}, 1.0, 0.3, 0.0, {{0.1}, {0.45}, {0.9}}, {0.4, 0.9, 0.2}};
  oracle::Vec mu(5);
  oracle::Mat cov(5, oracle::Vec(5));
  for (int i = 0; i < 5; ++i) {
    mu[i] = ref.mean({dom(i, 0)});
    for (int j = 0; j < 5; ++j) cov[i][j] = ref.cov({dom(i, 0)}, {dom(j, 0)});
  }
  const auto l = oracle::cholesky(cov);
  std::array<double, 5> p_oracle{};
  std::mt19937_64 orng(2024);
  std::normal_distribution<double> normal;
  const int oracle_draws = 1'000'000;
  for (int t = 0; t < oracle_draws; ++t) {
    oracle::Vec z(5), g(5);
    for (auto& zi : z) zi = normal(orng);
    int best = 0;
    for (int i = 0; i < 5; ++i) {
      g[i] = mu[i];
      for (int k = 0; k <= i; ++k) g[i] += l[i][k] * z[k];
      if (g[i] > g[best]) best = i;
    }
    p_oracle[best] += 1.0 / oracle_draws;
  }

  std::array<double, 5> p_ts{};
  Rng rng(7);
  const int draws = 100'000;
  for (int t = 0; t < draws; ++t) {
    const double x = select_ts(post, dom, rng)[0];
    p_ts[static_cast<size_t>(std::lround(x * 4))] += 1.0 / draws;
  }
  double tv = 0.0;
  for (int i = 0; i < 5; ++i) tv += 0.5 * std::abs(p_ts[i] - p_oracle[i]);
  CHECK(tv < 0.02);
}

TEST_CASE("TS picks a dominant candidate") {
  const Kernel k(KernelFamily::SquaredExponential, {0.05}, 1.0);
  Eigen::MatrixXd x(1, 1);
  x << 0.5;
  const auto post = gp::condition(k, Dataset(x, Eigen::VectorXd::Constant(1, 10.0)), 0.01, 0.0);
  Eigen::MatrixXd dom(4, 1);
  dom << 0.0, 0.2, 0.5, 0.8;
  Rng rng(5);
  int hits = 0;
  for (int t = 0; t < 10000; ++t) hits += select_ts(post, dom, rng)[0] == 0.5 ? 1 : 0;
  CHECK(hits >= 9990);
}

TEST_CASE("UCB schedule and selection") {
  CHECK(ucb_beta(1, 1) == doctest::Approx(0.2 * std::log(3.0)));
  CHECK(ucb_beta(12, 2) == doctest::Approx(0.4 * std::log(25.0)));

  // Equal variances: UCB reduces to the mean.
  const Kernel k(KernelFamily::SquaredExponential, {0.01}, 1.0);
  Eigen::MatrixXd obs(3, 1);
  obs << 0.1, 0.5, 0.9;
  Eigen::VectorXd y(3);
  y << 0.1, 0.3, 0.2;
  const auto equal = gp::condition(k, Dataset(obs, y), 0.5, 0.0);
  CHECK(select_ucb(equal, obs, 5, 1)[0] == 0.5);

  // Means (0, 0), standard deviations (1, 2): exploration picks the wider one.
  const Kernel wide(KernelFamily::SquaredExponential, {0.01}, 4.0);
  Eigen::MatrixXd x0(1, 1);
  x0 << 0.2;
  const auto two = gp::condition(wide, Dataset(x0, Eigen::VectorXd::Zero(1)), 4.0 / 3.0, 0.0);
  Eigen::MatrixXd cand(2, 1);
  cand << 0.2, 0.8;
  const auto m = two.moments(cand);
  CHECK(m.variance[0] == doctest::Approx(1.0));
  CHECK(m.variance[1] == doctest::Approx(4.0));
  CHECK(select_ucb(two, cand, 1, 1)[0] == 0.8);
}

TEST_CASE("UCB matches direct evaluation on a three-candidate posterior") {
  const Kernel k(KernelFamily::Matern52, {0.3, 0.6}, 1.3);
  Eigen::MatrixXd x(4, 2);
  x << 0.1, 0.2, 0.7, 0.7, 0.4, 0.9, 0.95, 0.05;
  Eigen::VectorXd y(4);
  y << 0.5, 1.2, -0.3, 0.8;
  const auto post = gp::condition(k, Dataset(x, y), 0.05, 0.4);
  Eigen::MatrixXd cand(3, 2);
  cand << 0.3, 0.3, 0.6, 0.8, 0.9, 0.2;
  oracle::Gp ref{true, {0.3, 0.6}, 1.3, 0.05, 0.4, testing::to_mat(x), testing::to_vec(y)};
  const double root_beta = std::sqrt(0.2 * 2 * std::log(2.0 * 12 + 1.0));
  int best = 0;
  double best_val = -1e300;
  for (int i = 0; i < 3; ++i) {
    const oracle::Vec c = {cand(i, 0), cand(i, 1)};
    const double u = ref.mean(c) + root_beta * std::sqrt(ref.var(c));
    if (u > best_val) {
      best_val = u;
      best = i;
    }
  }
  CHECK(select_ucb(post, cand, 12, 2) == cand.row(best).transpose());
}

TEST_CASE("expected improvement closed form") {
  CHECK(expected_improvement(0.0, 1.0, 0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
  CHECK(expected_improvement(2.0, 0.0, 1.0) == 1.0);
  CHECK(expected_improvement(0.5, 0.0, 1.0) == 0.0);

  // sigma = 0 everywhere: only the candidate above the incumbent has positive EI.
  const Kernel k(KernelFamily::SquaredExponential, {0.2}, 1.0);
  Eigen::MatrixXd x(3, 1);
  x << 0.1, 0.5, 0.9;
  Eigen::VectorXd y(3);
  y << 0.2, 1.5, 0.4;
  const auto post = gp::condition(k, Dataset(x, y), 0.0, 0.0);
  CHECK(select_ei(post, x, 1.0)[0] == 0.5);
}

TEST_CASE("EI argmax agrees with a Monte Carlo oracle") {
  Rng rng(12);
  const Kernel k(KernelFamily::SquaredExponential, {0.2, 0.2}, 1.0);
  const Eigen::MatrixXd x = testing::uniform_points(8, 2, rng);
  Eigen::VectorXd y(8);
  for (int i = 0; i < 8; ++i) y[i] = std::sin(5.0 * x(i, 0)) * std::cos(3.0 * x(i, 1));
  const auto post = gp::condition(k, Dataset(x, y), 0.01, 0.0);
  const Eigen::MatrixXd cand = testing::uniform_points(10, 2, rng);
  const double best_y = y.maxCoeff();
  const auto m = post.moments(cand);
  std::vector<double> ei(10), se(10);
  std::mt19937_64 orng(77);
  std::normal_distribution<double> normal;
  const int n = 100'000;
  for (int i = 0; i < 10; ++i) {
    double s = 0.0, s2 = 0.0;
    for (int t = 0; t < n; ++t) {
      const double imp = std::max(m.mean[i] + std::sqrt(m.variance[i]) * normal(orng) - best_y, 0.0);
      s += imp;
      s2 += imp * imp;
    }
    ei[i] = s / n;
    se[i] = std::sqrt(std::max(s2 / n - ei[i] * ei[i], 0.0) / n);
  }
  const auto chosen = select_ei(post, cand, best_y);
  int idx = 0;
  for (int i = 0; i < 10; ++i) {
    if (cand.row(i).transpose() == chosen) idx = i;
  }
  const int mc_best = static_cast<int>(std::max_element(ei.begin(), ei.end()) - ei.begin());
  // Agreement on argmax, allowing ties within Monte Carlo resolution.
  CHECK((idx == mc_best || ei[mc_best] - ei[idx] <= 4.0 * (se[mc_best] + se[idx])));
  for (int i = 0; i < 10; ++i) {
    CHECK(std::abs(expected_improvement(m.mean[i], std::sqrt(m.variance[i]), best_y) - ei[i]) <= 5.0 * se[i] + 1e-6);
  }
}

TEST_CASE("hallucination keeps the mean and shrinks the variance") {
  Rng rng(4);
  const Kernel k(KernelFamily::Matern52, {0.3, 0.3}, 1.0);
  const Eigen::MatrixXd x = testing::uniform_points(10, 2, rng);
  Eigen::VectorXd y(10);
  for (int i = 0; i < 10; ++i) y[i] = x(i, 0) * x(i, 1);
  const auto post = gp::condition(k, Dataset(x, y), 0.05, 0.1);
  const Eigen::MatrixXd q = testing::uniform_points(20, 2, rng);

  const auto same = hallucinate(post, InFlightSet(0, 2));
  const auto a = post.moments(q), b = same.moments(q);
  CHECK((a.mean - b.mean).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((a.variance - b.variance).cwiseAbs().maxCoeff() <= 1e-10);

  const Eigen::MatrixXd x0 = testing::uniform_points(1, 2, rng);
  const auto h1 = hallucinate(post, x0);
  const auto c = h1.moments(q);
  CHECK((a.mean - c.mean).cwiseAbs().maxCoeff() <= 1e-8);
  for (int i = 0; i < 20; ++i) CHECK(c.variance[i] <= a.variance[i] + 1e-12);
  CHECK(h1.variance(x0.row(0).transpose()) < post.variance(x0.row(0).transpose()));

  // The hallucinated value is the current mean, as computed by the oracle.
  oracle::Gp ref{true, {0.3, 0.3}, 1.0, 0.05, 0.1, testing::to_mat(x), testing::to_vec(y)};
  CHECK(h1.data().values()[10] == doctest::Approx(ref.mean(testing::to_vec(x0.row(0).transpose()))).epsilon(1e-10));

  Eigen::MatrixXd twice(2, 2);
  twice << x0, x0;
  const auto h2 = hallucinate(post, twice);
  CHECK(h2.variance(x0.row(0).transpose()) < h1.variance(x0.row(0).transpose()));
}

TEST_CASE("uncertainty initialisation") {
  const Kernel k(KernelFamily::SquaredExponential, {0.1}, 1.0);
  const Eigen::MatrixXd g = grid_1d(101);
  const auto first = uncertainty_init(k, g, 1, 1e-6);
  CHECK(first(0, 0) == g(0, 0));
  const auto two = uncertainty_init(k, g, 2, 1e-6);
  CHECK(std::abs(two(1, 0) - two(0, 0)) > 0.5);
  CHECK_THROWS_AS(uncertainty_init(k, g.topRows(3), 4, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(uncertainty_init(k, g, 0, 1e-6), std::invalid_argument);

  // Brute force: recompute every posterior variance from scratch each step.
  Rng rng(9);
  const Kernel k2(KernelFamily::Matern52, {0.4, 0.2, 0.3}, 1.5);
  const Eigen::MatrixXd cand = testing::uniform_points(60, 3, rng);
  const auto seq = uncertainty_init(k2, cand, 8, 0.01);
  oracle::Gp ref{true, {0.4, 0.2, 0.3}, 1.5, 0.01, 0.0, {}, {}};
  for (int step = 0; step < 8; ++step) {
    int best = 0;
    double best_v = -1.0;
    for (int i = 0; i < 60; ++i) {
      const double v = ref.var(testing::to_vec(cand.row(i).transpose()));
      if (v > best_v + 1e-12) {
        best_v = v;
        best = i;
      }
    }
    CHECK(seq.row(step) == cand.row(best));
    ref.xs.push_back(testing::to_vec(cand.row(best).transpose()));
    ref.ys.push_back(0.0);
  }
}

TEST_CASE("random selection") {
  Rng rng(1);
  Eigen::MatrixXd one(1, 2);
  one << 0.3, 0.4;
  CHECK(select_random(one, rng) == one.row(0).transpose());
  CHECK_THROWS(select_random(Eigen::MatrixXd(0, 2), rng));

  const Eigen::MatrixXd g = grid_1d(10);
  std::array<int, 10> counts{};
  const int n = 100'000;
  for (int t = 0; t < n; ++t) counts[static_cast<size_t>(std::lround(select_random(g, rng)[0] * 9))]++;
  for (int c : counts) CHECK(std::abs(static_cast<double>(c) / n - 0.1) <= 0.01);

  Rng a(5), b(5);
  for (int t = 0; t < 20; ++t) CHECK(select_random(g, a) == select_random(g, b));
}

TEST_CASE("select dispatches and is deterministic") {
  const auto post = five_point_posterior();
  const Eigen::MatrixXd dom = grid_1d(7);
  Eigen::MatrixXd in_flight(1, 1);
  in_flight << 0.5;
  for (auto kind : {StrategyKind::TS, StrategyKind::HallucinatedTS, StrategyKind::UCB, StrategyKind::HallucinatedUCB,
                    StrategyKind::EI, StrategyKind::Random}) {
    const SelectionContext ctx{post, dom, in_flight, 3, 0.9};
    Rng a(11), b(11);
    const AcquisitionStrategy s(kind);
    CHECK(select(s, ctx, a) == select(s, ctx, b));
  }
  // Hallucinated UCB moves away from the in-flight point.
  const SelectionContext ctx{post, dom, in_flight, 3, 0.9};
  Rng rng(1);
  const double plain = select(AcquisitionStrategy(StrategyKind::UCB), ctx, rng)[0];
  const double hucb = select(AcquisitionStrategy(StrategyKind::HallucinatedUCB), ctx, rng)[0];
  CHECK(plain == 0.5);
  CHECK(hucb != 0.5);
}
