#include "ptsbo/acquisition/acquisition.hpp"

#include "ptsbo/halton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ptsbo::acq {

namespace {

void require_candidates(const Eigen::Ref<const Eigen::MatrixXd>& candidates) {
  if (candidates.rows() == 0) throw std::invalid_argument("candidate set is empty");
}

}  // namespace

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::TS: return "TS";
    case StrategyKind::HallucinatedTS: return "HTS";
    case StrategyKind::UCB: return "UCB";
    case StrategyKind::HallucinatedUCB: return "HUCB";
    case StrategyKind::EI: return "EI";
    case StrategyKind::Random: return "Random";
  }
  return "TS";
}

StrategyKind strategy_kind_from_string(std::string_view name) {
  for (auto kind : {StrategyKind::TS, StrategyKind::HallucinatedTS, StrategyKind::UCB,
                    StrategyKind::HallucinatedUCB, StrategyKind::EI, StrategyKind::Random}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "' (expected TS, HTS, UCB, HUCB, EI or Random)");
}

AcquisitionStrategy::AcquisitionStrategy(StrategyKind kind, std::map<std::string, double> params)
    : kind_(kind), params_(std::move(params)) {
  const bool ucb = kind_ == StrategyKind::UCB || kind_ == StrategyKind::HallucinatedUCB;
  for (const auto& [name, value] : params_) {
    if (!(ucb && name == "beta_coefficient")) {
      throw std::invalid_argument("strategy " + std::string(to_string(kind_)) + " does not accept parameter '" +
                                  name + "'");
    }
    if (!(value > 0.0)) throw std::invalid_argument("beta_coefficient must be positive");
  }
  if (ucb && !params_.contains("beta_coefficient")) params_["beta_coefficient"] = 0.2;
}

double AcquisitionStrategy::param(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw std::out_of_range("strategy has no parameter '" + name + "'");
  return it->second;
}

Eigen::MatrixXd quasi_uniform_candidates(int count, int dim, Rng& rng) {
  if (count <= 0) throw std::invalid_argument("candidate count must be positive");
  if (dim <= 0) throw std::invalid_argument("candidate dimension must be positive");
  Eigen::RowVectorXd shift(dim);
  for (int k = 0; k < dim; ++k) shift[k] = uniform01(rng);
  Eigen::MatrixXd out(count, dim);
  for (int i = 0; i < count; ++i) {
    for (int k = 0; k < dim; ++k) {
      const double v = halton(i + 1, k) + shift[k];
      out(i, k) = v >= 1.0 ? v - 1.0 : v;
    }
  }
  return out;
}

Eigen::Index argmax(const Eigen::Ref<const Eigen::VectorXd>& values) {
  if (values.size() == 0) throw std::invalid_argument("argmax of an empty vector");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

Eigen::VectorXd select_ts(const gp::GpPosterior& post, const Eigen::Ref<const Eigen::MatrixXd>& candidates,
                          Rng& rng) {
  require_candidates(candidates);
  if (candidates.rows() == 1) return candidates.row(0).transpose();
  const Eigen::VectorXd draw = gp::sample_joint(post, candidates, rng);
  return candidates.row(argmax(draw)).transpose();
}

double ucb_beta(long step, int dim, double coefficient) {
  if (step < 1) throw std::invalid_argument("UCB step index must be at least 1");
  return coefficient * dim * std::log(2.0 * static_cast<double>(step) + 1.0);
}

Eigen::VectorXd select_ucb(const gp::GpPosterior& post, const Eigen::Ref<const Eigen::MatrixXd>& candidates,
                           long step, int dim, double coefficient) {
  require_candidates(candidates);
  const double width = std::sqrt(ucb_beta(step, dim, coefficient));
  const auto m = post.moments(candidates);
  const Eigen::VectorXd score = m.mean + width * m.variance.cwiseSqrt();
  return candidates.row(argmax(score)).transpose();
}

double expected_improvement(double mean, double sd, double best_y) {
  const double gap = mean - best_y;
  if (!(sd > 0.0)) return std::max(gap, 0.0);
  const double z = gap / sd;
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return gap * cdf + sd * pdf;
}

Eigen::VectorXd select_ei(const gp::GpPosterior& post, const Eigen::Ref<const Eigen::MatrixXd>& candidates,
                          double best_y) {
  require_candidates(candidates);
  const auto m = post.moments(candidates);
  Eigen::VectorXd score(candidates.rows());
  for (Eigen::Index i = 0; i < score.size(); ++i) {
    score[i] = expected_improvement(m.mean[i], std::sqrt(m.variance[i]), best_y);
  }
  return candidates.row(argmax(score)).transpose();
}

gp::GpPosterior hallucinate(const gp::GpPosterior& post, const InFlightSet& in_flight) {
  if (in_flight.rows() == 0) return post;
  gp::Dataset augmented = post.data();
  const auto m = post.moments(in_flight);
  for (Eigen::Index i = 0; i < in_flight.rows(); ++i) augmented.add(in_flight.row(i).transpose(), m.mean[i]);
  return gp::condition(post.kernel(), std::move(augmented), post.noise_var(), post.mean_const());
}

Eigen::MatrixXd uncertainty_init(const gp::Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& candidates,
                                 int n_init, double noise_var) {
  require_candidates(candidates);
  if (n_init < 1) throw std::invalid_argument("n_init must be at least 1");
  if (n_init > candidates.rows()) {
    throw std::invalid_argument("n_init (" + std::to_string(n_init) + ") exceeds the candidate count (" +
                                std::to_string(candidates.rows()) + ")");
  }
  gp::Dataset chosen(kernel.dim());
  Eigen::MatrixXd out(n_init, candidates.cols());
  for (int i = 0; i < n_init; ++i) {
    const auto post = gp::condition(kernel, chosen, noise_var, 0.0);
    const Eigen::Index best = argmax(post.moments(candidates).variance);
    out.row(i) = candidates.row(best);
    chosen.add(candidates.row(best).transpose(), 0.0);
  }
  return out;
}

Eigen::VectorXd select_random(const Eigen::Ref<const Eigen::MatrixXd>& candidates, Rng& rng) {
  require_candidates(candidates);
  std::uniform_int_distribution<Eigen::Index> pick(0, candidates.rows() - 1);
  return candidates.row(pick(rng)).transpose();
}

Eigen::VectorXd select(const AcquisitionStrategy& strategy, const SelectionContext& ctx, Rng& rng) {
  const int dim = static_cast<int>(ctx.candidates.cols());
  switch (strategy.kind()) {
    case StrategyKind::TS:
      return select_ts(ctx.posterior, ctx.candidates, rng);
    case StrategyKind::HallucinatedTS:
      return select_ts(hallucinate(ctx.posterior, ctx.in_flight), ctx.candidates, rng);
    case StrategyKind::UCB:
      return select_ucb(ctx.posterior, ctx.candidates, ctx.step, dim, strategy.param("beta_coefficient"));
    case StrategyKind::HallucinatedUCB:
      return select_ucb(hallucinate(ctx.posterior, ctx.in_flight), ctx.candidates, ctx.step, dim,
                        strategy.param("beta_coefficient"));
    case StrategyKind::EI:
      return select_ei(ctx.posterior, ctx.candidates, ctx.best_y);
    case StrategyKind::Random:
      return select_random(ctx.candidates, rng);
  }
  throw std::logic_error("unhandled strategy kind");
}

}  // namespace ptsbo::acq
