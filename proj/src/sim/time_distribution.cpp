#include "ptsbo/sim/time_distribution.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ptsbo::sim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// U in (0, 1], so that logs and negative powers stay finite.
double open_uniform(Rng& rng) { return 1.0 - uniform01(rng); }

}  // namespace

TimeDistribution::TimeDistribution(Variant v) : v_(v) {
  std::visit(overloaded{
                 [](const Uniform& u) {
                   if (!(u.a < u.b) || !(u.a >= 0.0)) throw std::invalid_argument("Uniform(a,b) needs 0 <= a < b");
                 },
                 [](const HalfNormal& h) {
                   if (!(h.zeta_sq > 0.0)) throw std::invalid_argument("HalfNormal needs zeta_sq > 0");
                 },
                 [](const Exponential& e) {
                   if (!(e.lambda > 0.0)) throw std::invalid_argument("Exponential needs lambda > 0");
                 },
                 [](const Pareto& p) {
                   if (!(p.k > 0.0) || !(p.x_min > 0.0)) throw std::invalid_argument("Pareto needs k > 0 and x_min > 0");
                 },
             },
             v_);
}

std::string TimeDistribution::name() const {
  return std::visit(overloaded{
                        [](const Uniform&) { return std::string("uniform"); },
                        [](const HalfNormal&) { return std::string("halfnormal"); },
                        [](const Exponential&) { return std::string("exponential"); },
                        [](const Pareto&) { return std::string("pareto"); },
                    },
                    v_);
}

double TimeDistribution::sample(Rng& rng) const {
  return std::visit(overloaded{
                        [&](const Uniform& u) { return u.a + (u.b - u.a) * open_uniform(rng); },
                        [&](const HalfNormal& h) { return std::abs(std::sqrt(h.zeta_sq) * standard_normal(rng)); },
                        [&](const Exponential& e) { return -std::log(open_uniform(rng)) / e.lambda; },
                        [&](const Pareto& p) { return p.x_min * std::pow(open_uniform(rng), -1.0 / p.k); },
                    },
                    v_);
}

double TimeDistribution::mean() const {
  return std::visit(overloaded{
                        [](const Uniform& u) { return 0.5 * (u.a + u.b); },
                        [](const HalfNormal& h) { return std::sqrt(h.zeta_sq) * std::sqrt(2.0 / std::numbers::pi); },
                        [](const Exponential& e) { return 1.0 / e.lambda; },
                        [](const Pareto& p) {
                          return p.k > 1.0 ? p.k * p.x_min / (p.k - 1.0) : std::numeric_limits<double>::infinity();
                        },
                    },
                    v_);
}

TimeDistribution TimeDistribution::unit_mean() const {
  const double m = mean();
  if (!std::isfinite(m)) throw std::invalid_argument("Pareto with k <= 1 has no finite mean to normalize");
  return std::visit(overloaded{
                        [&](const Uniform& u) -> TimeDistribution { return Uniform{u.a / m, u.b / m}; },
                        [&](const HalfNormal& h) -> TimeDistribution { return HalfNormal{h.zeta_sq / (m * m)}; },
                        [&](const Exponential& e) -> TimeDistribution { return Exponential{e.lambda * m}; },
                        [&](const Pareto& p) -> TimeDistribution { return Pareto{p.k, p.x_min / m}; },
                    },
                    v_);
}

bool TimeDistribution::operator==(const TimeDistribution& other) const {
  if (v_.index() != other.v_.index()) return false;
  return std::visit(overloaded{
                        [&](const Uniform& u) {
                          const auto& o = std::get<Uniform>(other.v_);
                          return u.a == o.a && u.b == o.b;
                        },
                        [&](const HalfNormal& h) { return h.zeta_sq == std::get<HalfNormal>(other.v_).zeta_sq; },
                        [&](const Exponential& e) { return e.lambda == std::get<Exponential>(other.v_).lambda; },
                        [&](const Pareto& p) {
                          const auto& o = std::get<Pareto>(other.v_);
                          return p.k == o.k && p.x_min == o.x_min;
                        },
                    },
                    v_);
}

double sample_time(const TimeDistribution& dist, Rng& rng) { return dist.sample(rng); }

}  // namespace ptsbo::sim
