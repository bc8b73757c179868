#include "ptsbo/harness/theory_suite.hpp"

#include "ptsbo/errors.hpp"
#include "ptsbo/gp/kernel.hpp"
#include "ptsbo/rng.hpp"
#include "ptsbo/theory/information.hpp"
#include "ptsbo/theory/order_stats.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ptsbo::harness {

namespace {

using nlohmann::ordered_json;

struct Report {
  ordered_json checks = ordered_json::array();
  std::uint64_t seed;
  std::uint64_t next_stream = 1;

  // Each check draws from its own stream, so adding a check leaves the others alone.
  Rng stream() { return make_stream(seed, next_stream++); }

  void add(const std::string& name, ordered_json params, double expected, double observed, double tolerance,
           bool pass) {
    ordered_json c;
    c["name"] = name;
    c["parameters"] = std::move(params);
    c["expected"] = expected;
    c["observed"] = observed;
    c["tolerance"] = tolerance;
    c["pass"] = pass;
    checks.push_back(std::move(c));
  }

  void relative(const std::string& name, ordered_json params, double expected, double observed, double tol) {
    add(name, std::move(params), expected, observed, tol, std::abs(observed - expected) <= tol * std::abs(expected));
  }
};

std::vector<double> max_of_direct(int m, long trials, Rng& rng) {
  const sim::TimeDistribution e{sim::Exponential{1.0}};
  std::vector<double> out(static_cast<size_t>(trials));
  for (auto& v : out) {
    v = 0.0;
    for (int i = 0; i < m; ++i) v = std::max(v, e.sample(rng));
  }
  return out;
}

}  // namespace

TheorySuiteConfig parse_theory_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
  TheorySuiteConfig c;
  for (const auto& [key, value] : doc.items()) {
    auto integer = [&]() -> long {
      if (!value.is_number_integer()) throw ConfigError(key, "expected an integer");
      return value.get<long>();
    };
    if (key == "mc_trials") {
      c.mc_trials = integer();
    } else if (key == "ks_trials") {
      c.ks_trials = integer();
    } else if (key == "concentration_runs") {
      c.concentration_runs = static_cast<int>(integer());
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError(key, "expected a non-negative integer");
      c.seed = value.get<std::uint64_t>();
    } else if (key == "mc_tolerance") {
      if (!value.is_number() || !(value.get<double>() > 0.0)) throw ConfigError(key, "expected a positive number");
      c.mc_tolerance = value.get<double>();
    } else {
      throw ConfigError(key, "unknown field");
    }
  }
  if (c.mc_trials < 1) throw ConfigError("mc_trials", "must be at least 1");
  if (c.ks_trials < 1) throw ConfigError("ks_trials", "must be at least 1");
  if (c.concentration_runs < 100) throw ConfigError("concentration_runs", "must be at least 100");
  return c;
}

ordered_json run_theory_suite(const TheorySuiteConfig& config) {
  if (config.mc_trials < 1 || config.ks_trials < 1) throw std::invalid_argument("trial counts must be positive");
  if (config.concentration_runs < 100) throw std::invalid_argument("concentration_runs must be at least 100");
  const auto mc_tol = [&](double fallback) { return config.mc_tolerance.value_or(fallback); };
  Report rep{ordered_json::array(), config.seed};

  // Closed forms.
  rep.relative("harmonic", {{"M", 10}}, 7381.0 / 2520.0, theory::harmonic(10), 1e-12);
  rep.relative("beta_n", {{"n", std::numbers::e}, {"d", 1}, {"a", 1.0}, {"b", 1.0}}, 8.0 + std::log(std::numbers::pi),
               theory::beta_n(std::numbers::e, 1, 1.0, 1.0), 1e-12);
  {
    const gp::Kernel k(gp::KernelFamily::SquaredExponential, {0.5}, 1.0);
    const Eigen::MatrixXd x = Eigen::MatrixXd::Constant(1, 1, 0.3);
    rep.relative("info_gain_single_point", {{"scale", 1.0}, {"noise_var", 1.0}}, 0.5 * std::log(2.0),
                 theory::info_gain(k, x, 1.0), 1e-12);
    const auto v = theory::variance_sum_check(k, x, 1.0);
    rep.add("variance_sum_equality", {{"scale", 1.0}, {"noise_var", 1.0}}, v.rhs, v.lhs, 1e-8,
            v.holds && std::abs(v.lhs - v.rhs) <= 1e-8);
  }
  {
    const auto b = theory::n_bounds(sim::TimeDistribution{sim::Exponential{1.0}}, sim::Mode::Asynchronous, 8, 30.0, 0.2);
    ordered_json p{{"dist", "exponential(1)"}, {"mode", "asynchronous"}, {"M", 8}, {"T", 30.0}, {"alpha", 0.2}};
    rep.relative("n_bounds_lower", p, 192.0, b.lower, 1e-12);
    rep.relative("n_bounds_upper", p, 300.0, b.upper, 1e-12);
  }

  // Expected maxima against exact formulas.
  for (int m : {1, 3, 10}) {
    const sim::TimeDistribution u{sim::Uniform{0.0, 1.0}};
    Rng rng = rep.stream();
    const auto s = theory::expected_max(u, m, config.mc_trials, rng);
    rep.relative("expected_max_uniform", {{"a", 0.0}, {"b", 1.0}, {"M", m}, {"trials", config.mc_trials}},
                 *s.exact_max, *s.mc_max, mc_tol(0.01));
  }
  for (int m : {1, 3, 10}) {
    const sim::TimeDistribution e{sim::Exponential{1.0}};
    Rng rng = rep.stream();
    const auto s = theory::expected_max(e, m, config.mc_trials, rng);
    rep.relative("expected_max_exponential", {{"lambda", 1.0}, {"M", m}, {"trials", config.mc_trials}}, *s.exact_max,
                 *s.mc_max, mc_tol(0.01));
  }
  for (int m : {2, 10, 100}) {
    const sim::TimeDistribution h{sim::HalfNormal{1.0}};
    Rng rng = rep.stream();
    const auto s = theory::expected_max(h, m, config.mc_trials, rng);
    const ordered_json p{{"zeta", 1.0}, {"M", m}, {"trials", config.mc_trials}};
    rep.add("expected_max_halfnormal_upper", p, *s.upper_bound, *s.mc_max, 0.0, *s.mc_max <= *s.upper_bound);
    const double single = std::sqrt(2.0 / std::numbers::pi);
    rep.add("expected_max_halfnormal_lower", p, single, *s.mc_max, 0.0, *s.mc_max >= single);
  }

  // Renyi representation against direct sampling.
  for (int m : {2, 5, 20}) {
    Rng rng = rep.stream();
    std::vector<double> renyi(static_cast<size_t>(config.ks_trials));
    for (auto& v : renyi) v = theory::renyi_order_statistics(m, 1.0, rng).front();
    const auto direct = max_of_direct(m, config.ks_trials, rng);
    rep.add("renyi_ks", {{"M", m}, {"lambda", 1.0}, {"trials", config.ks_trials}}, 0.0,
            theory::ks_statistic(renyi, direct), mc_tol(0.01), theory::ks_statistic(renyi, direct) < mc_tol(0.01));
  }
  {
    Rng rng = rep.stream();
    double sum = 0.0;
    for (long t = 0; t < config.mc_trials; ++t) sum += theory::renyi_order_statistics(5, 1.0, rng).front();
    rep.relative("renyi_mean_max", {{"M", 5}, {"lambda", 1.0}, {"trials", config.mc_trials}}, theory::harmonic(5),
                 sum / static_cast<double>(config.mc_trials), mc_tol(0.01));
  }

  // Completed-evaluation counts against their prediction intervals.
  const std::pair<const char*, sim::TimeDistribution> dists[] = {{"uniform(0.5,1.5)", sim::Uniform{0.5, 1.5}},
                                                                 {"exponential(1)", sim::Exponential{1.0}}};
  for (const auto& [label, dist] : dists) {
    for (auto mode : {sim::Mode::Sequential, sim::Mode::Synchronous, sim::Mode::Asynchronous}) {
      Rng rng = rep.stream();
      const int m = 4;
      const auto r = theory::validate_concentration(dist, mode, m, 200.0, 0.3, config.concentration_runs, rng);
      const double tol = mc_tol(0.05);
      rep.add("n_concentration",
              {{"dist", label},
               {"mode", std::string(sim::to_string(mode))},
               {"M", m},
               {"T", 200.0},
               {"alpha", 0.3},
               {"runs", config.concentration_runs},
               {"lower", r.interval.lower},
               {"upper", r.interval.upper}},
              1.0, r.coverage, tol, r.coverage >= 1.0 - tol);
    }
  }

  // Sub-exponential tail of the exponential maximum.
  {
    Rng rng = rep.stream();
    for (const auto& p : theory::exponential_max_tail(1.0, 10, {0.5, 1.0}, config.mc_trials, rng)) {
      rep.add("exponential_max_tail", {{"lambda", 1.0}, {"M", 10}, {"t", p.t}, {"trials", config.mc_trials}}, p.bound,
              p.empirical, 0.0, p.empirical <= p.bound);
    }
  }

  int passed = 0;
  for (const auto& c : rep.checks) passed += c["pass"].get<bool>() ? 1 : 0;
  const int failed = static_cast<int>(rep.checks.size()) - passed;

  ordered_json out;
  ordered_json cfg{{"mc_trials", config.mc_trials},
                   {"ks_trials", config.ks_trials},
                   {"concentration_runs", config.concentration_runs},
                   {"seed", config.seed}};
  if (config.mc_tolerance) cfg["mc_tolerance"] = *config.mc_tolerance;
  out["config"] = cfg;
  out["checks"] = rep.checks;
  out["passed"] = passed;
  out["failed"] = failed;
  out["all_pass"] = failed == 0;
  return out;
}

}  // namespace ptsbo::harness
