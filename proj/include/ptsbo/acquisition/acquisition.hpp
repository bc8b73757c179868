#pragma once

#include "ptsbo/gp/posterior.hpp"
#include "ptsbo/rng.hpp"

#include <Eigen/Core>

#include <map>
#include <string>
#include <string_view>

namespace ptsbo::acq {

enum class StrategyKind { TS, HallucinatedTS, UCB, HallucinatedUCB, EI, Random };

std::string_view to_string(StrategyKind kind);
StrategyKind strategy_kind_from_string(std::string_view name);

/// A point-selection rule plus its named numeric parameters.
/// UCB variants accept `beta_coefficient` (default 0.2); the others take none.
class AcquisitionStrategy {
 public:
  explicit AcquisitionStrategy(StrategyKind kind, std::map<std::string, double> params = {});

  StrategyKind kind() const { return kind_; }
  const std::map<std::string, double>& params() const { return params_; }
  double param(const std::string& name) const;
  bool uses_model() const { return kind_ != StrategyKind::Random; }
  bool hallucinates() const { return kind_ == StrategyKind::HallucinatedTS || kind_ == StrategyKind::HallucinatedUCB; }

  bool operator==(const AcquisitionStrategy&) const = default;

 private:
  StrategyKind kind_;
  std::map<std::string, double> params_;
};

/// Points under evaluation by other workers, one per row.
using InFlightSet = Eigen::MatrixXd;

/// `count` points of a Halton sequence under a random Cranley-Patterson shift.
Eigen::MatrixXd quasi_uniform_candidates(int count, int dim, Rng& rng);

/// First index attaining the maximum.
Eigen::Index argmax(const Eigen::Ref<const Eigen::VectorXd>& values);

Eigen::VectorXd select_ts(const gp::GpPosterior& post, const Eigen::Ref<const Eigen::MatrixXd>& candidates, Rng& rng);

/// beta_j = coefficient * d * log(2j + 1)
double ucb_beta(long step, int dim, double coefficient = 0.2);

Eigen::VectorXd select_ucb(const gp::GpPosterior& post, const Eigen::Ref<const Eigen::MatrixXd>& candidates,
                           long step, int dim, double coefficient = 0.2);

double expected_improvement(double mean, double sd, double best_y);

Eigen::VectorXd select_ei(const gp::GpPosterior& post, const Eigen::Ref<const Eigen::MatrixXd>& candidates,
                          double best_y);

/// Conditions on each in-flight point paired with its current posterior mean.
gp::GpPosterior hallucinate(const gp::GpPosterior& post, const InFlightSet& in_flight);

/// Greedy maximum-variance design. Posterior variance does not depend on the
/// observed values, so the sequence can be computed before any evaluation.
Eigen::MatrixXd uncertainty_init(const gp::Kernel& kernel, const Eigen::Ref<const Eigen::MatrixXd>& candidates,
                                 int n_init, double noise_var);

Eigen::VectorXd select_random(const Eigen::Ref<const Eigen::MatrixXd>& candidates, Rng& rng);

struct SelectionContext {
  const gp::GpPosterior& posterior;
  const Eigen::MatrixXd& candidates;
  const InFlightSet& in_flight;
  long step;      // 1-based dispatch index
  double best_y;  // best observation so far (EI incumbent)
};

/// Dispatches to the selector for `strategy.kind()`.
Eigen::VectorXd select(const AcquisitionStrategy& strategy, const SelectionContext& ctx, Rng& rng);

}  // namespace ptsbo::acq
