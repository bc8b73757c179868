#pragma once

#include "ptsbo/rng.hpp"

#include <string>
#include <type_traits>
#include <variant>

namespace ptsbo::sim {

struct Uniform {
  double a;
  double b;
};
/// |N(0, zeta_sq)|
struct HalfNormal {
  double zeta_sq;
};
/// Rate parameterization: mean 1/lambda.
struct Exponential {
  double lambda;
};
/// Density proportional to x^-(k+1) on [x_min, inf).
struct Pareto {
  double k;
  double x_min;
};

/// Evaluation-time law, independent of the query point.
class TimeDistribution {
 public:
  using Variant = std::variant<Uniform, HalfNormal, Exponential, Pareto>;

  TimeDistribution(Variant v);  // NOLINT(google-explicit-constructor)
  template <typename Law>
    requires std::is_constructible_v<Variant, Law>
  TimeDistribution(Law law) : TimeDistribution(Variant(std::move(law))) {}  // NOLINT(google-explicit-constructor)

  const Variant& variant() const { return v_; }
  std::string name() const;
  double sample(Rng& rng) const;
  /// Infinite for Pareto with k <= 1.
  double mean() const;
  /// Same family rescaled to mean 1. Throws for a Pareto without a finite mean.
  TimeDistribution unit_mean() const;

  bool operator==(const TimeDistribution&) const;

 private:
  Variant v_;
};

double sample_time(const TimeDistribution& dist, Rng& rng);

}  // namespace ptsbo::sim
