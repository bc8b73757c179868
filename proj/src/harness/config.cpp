#include "ptsbo/harness/config.hpp"

#include "ptsbo/benchmarks/benchmarks.hpp"
#include "ptsbo/errors.hpp"

#include <fstream>
#include <set>
#include <variant>

namespace ptsbo::harness {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Reads an object field by field and rejects keys nobody asked for.
class Fields {
 public:
  Fields(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return doc_.contains(key) && !doc_.at(key).is_null(); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return doc_.at(key);
  }

  std::string where(const std::string& key) const { return join(path_, key); }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(where(key), "expected a number");
    return v.get<double>();
  }

  long integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(where(key), "expected an integer");
    return v.get<long>();
  }

  std::string string(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(where(key), "expected a string");
    return v.get<std::string>();
  }

  bool boolean(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(where(key), "expected true or false");
    return v.get<bool>();
  }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!seen_.contains(key)) throw ConfigError(where(key), "unknown field");
    }
  }

 private:
  const json& doc_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

acq::AcquisitionStrategy strategy_from_json(const json& doc, const std::string& path) {
  if (doc.is_string()) {
    return wrap(path, [&] { return acq::AcquisitionStrategy(acq::strategy_kind_from_string(doc.get<std::string>())); });
  }
  Fields f(doc, path);
  const std::string kind = f.string("kind");
  std::map<std::string, double> params;
  if (f.has("params")) {
    const json& p = f.raw("params");
    if (!p.is_object()) throw ConfigError(f.where("params"), "expected an object");
    for (const auto& [name, value] : p.items()) {
      if (!value.is_number()) throw ConfigError(join(f.where("params"), name), "expected a number");
      params[name] = value.get<double>();
    }
  } else if (doc.contains("params")) {
    f.raw("params");
  }
  f.finish();
  return wrap(f.where("params"),
              [&] { return acq::AcquisitionStrategy(acq::strategy_kind_from_string(kind), std::move(params)); });
}

ordered_json strategy_to_json(const acq::AcquisitionStrategy& s) {
  ordered_json out;
  out["kind"] = std::string(acq::to_string(s.kind()));
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : s.params()) params[k] = v;
  out["params"] = params;
  return out;
}

}  // namespace

std::string default_arm_name(sim::Mode mode, acq::StrategyKind kind) {
  std::string prefix = mode == sim::Mode::Sequential ? "seq" : mode == sim::Mode::Synchronous ? "syn" : "asy";
  return prefix + (kind == acq::StrategyKind::Random ? std::string("Rand") : std::string(acq::to_string(kind)));
}

sim::SimulationConfig ExperimentConfig::simulation(const Arm& arm) const {
  sim::SimulationConfig s;
  s.mode = arm.mode;
  s.workers = arm.workers;
  s.horizon = horizon;
  s.budget = budget;
  s.strategy = arm.strategy;
  s.times = times.resolved();
  s.init_count = n_init;
  s.init_method = init_method;
  s.refit_period = refit_period;
  s.fit_budget = fit_budget;
  s.candidate_count = candidate_count;
  s.kernel = kernel;
  s.noise_sd = noise_sd;
  s.gp_noise = gp_noise;
  return s;
}

sim::TimeDistribution time_distribution_from_json(const json& doc, const std::string& path) {
  Fields f(doc, path);
  const std::string kind = f.string("kind");
  auto build = [&]() -> sim::TimeDistribution {
    if (kind == "uniform") return sim::Uniform{f.number("a"), f.number("b")};
    if (kind == "halfnormal") return sim::HalfNormal{f.number("zeta_sq")};
    if (kind == "exponential") return sim::Exponential{f.number("lambda")};
    if (kind == "pareto") return sim::Pareto{f.number("k"), f.number("x_min")};
    throw ConfigError(f.where("kind"), "unknown distribution '" + kind + "' (uniform, halfnormal, exponential, pareto)");
  };
  auto dist = wrap(path, build);
  f.finish();
  return dist;
}

ordered_json time_distribution_to_json(const sim::TimeDistribution& dist) {
  ordered_json out;
  out["kind"] = dist.name();
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, sim::Uniform>) {
          out["a"] = d.a;
          out["b"] = d.b;
        } else if constexpr (std::is_same_v<T, sim::HalfNormal>) {
          out["zeta_sq"] = d.zeta_sq;
        } else if constexpr (std::is_same_v<T, sim::Exponential>) {
          out["lambda"] = d.lambda;
        } else {
          out["k"] = d.k;
          out["x_min"] = d.x_min;
        }
      },
      dist.variant());
  return out;
}

ExperimentConfig parse_experiment_config(const json& doc) {
  Fields f(doc, "");
  ExperimentConfig c;

  if (f.has("benchmark")) c.benchmark = f.string("benchmark");
  wrap("benchmark", [&] { return &bench::benchmark_by_name(c.benchmark); });

  // Arm defaults come from the top-level mode/strategy/workers.
  Arm base;
  if (f.has("mode")) base.mode = wrap("mode", [&] { return sim::mode_from_string(f.string("mode")); });
  if (f.has("workers")) base.workers = static_cast<int>(f.integer("workers"));
  if (f.has("strategy")) base.strategy = strategy_from_json(f.raw("strategy"), "strategy");
  if (base.workers < 1) throw ConfigError("workers", "must be at least 1");

  if (f.has("arms")) {
    const json& arms = f.raw("arms");
    if (!arms.is_array() || arms.empty()) throw ConfigError("arms", "expected a non-empty array");
    std::set<std::string> names;
    for (size_t i = 0; i < arms.size(); ++i) {
      const std::string path = "arms[" + std::to_string(i) + "]";
      Fields af(arms[i], path);
      Arm arm = base;
      arm.name.clear();
      if (af.has("mode")) arm.mode = wrap(af.where("mode"), [&] { return sim::mode_from_string(af.string("mode")); });
      if (af.has("workers")) arm.workers = static_cast<int>(af.integer("workers"));
      if (af.has("strategy")) arm.strategy = strategy_from_json(af.raw("strategy"), af.where("strategy"));
      if (af.has("name")) arm.name = af.string("name");
      af.finish();
      if (arm.workers < 1) throw ConfigError(af.where("workers"), "must be at least 1");
      if (arm.name.empty()) arm.name = default_arm_name(arm.mode, arm.strategy.kind());
      if (!names.insert(arm.name).second) throw ConfigError(af.where("name"), "duplicate arm name '" + arm.name + "'");
      c.arms.push_back(std::move(arm));
    }
  } else {
    base.name = default_arm_name(base.mode, base.strategy.kind());
    c.arms.push_back(base);
  }

  if (f.has("horizon")) c.horizon = f.number("horizon");
  if (f.has("budget")) c.budget = f.integer("budget");
  if (c.horizon.has_value() == c.budget.has_value()) {
    throw ConfigError("horizon", "set exactly one of 'horizon' and 'budget'");
  }
  if (c.horizon && !(*c.horizon > 0.0)) throw ConfigError("horizon", "must be positive");
  if (c.budget && *c.budget < 1) throw ConfigError("budget", "must be at least 1");

  if (f.has("time_distribution")) {
    const json& td = f.raw("time_distribution");
    json inner = td;
    if (td.is_object() && td.contains("unit_mean")) {
      if (!td.at("unit_mean").is_boolean()) throw ConfigError("time_distribution.unit_mean", "expected true or false");
      c.times.unit_mean = td.at("unit_mean").get<bool>();
      inner.erase("unit_mean");
    }
    c.times.base = time_distribution_from_json(inner, "time_distribution");
    if (c.times.unit_mean) {
      // Preflight: the rescaled law must have mean exactly 1.
      const auto resolved = wrap("time_distribution", [&] { return c.times.resolved(); });
      if (std::abs(resolved.mean() - 1.0) > 1e-12) throw ConfigError("time_distribution", "unit-mean rescaling failed");
    }
  }

  if (f.has("noise_sd")) {
    c.noise_sd = f.number("noise_sd");
    if (*c.noise_sd < 0.0) throw ConfigError("noise_sd", "must be non-negative");
  }
  if (f.has("n_init")) c.n_init = static_cast<int>(f.integer("n_init"));
  if (c.n_init < 0) throw ConfigError("n_init", "must be non-negative");
  if (f.has("init_method")) {
    const std::string m = f.string("init_method");
    if (m == "random") {
      c.init_method = sim::InitMethod::Random;
    } else if (m == "uncertainty") {
      c.init_method = sim::InitMethod::Uncertainty;
    } else {
      throw ConfigError("init_method", "expected 'random' or 'uncertainty'");
    }
  }
  if (f.has("refit_period")) c.refit_period = static_cast<int>(f.integer("refit_period"));
  if (c.refit_period < 1) throw ConfigError("refit_period", "must be at least 1");
  if (f.has("fit_budget")) c.fit_budget = static_cast<int>(f.integer("fit_budget"));
  if (c.fit_budget < 1) throw ConfigError("fit_budget", "must be at least 1");
  if (f.has("candidate_count")) c.candidate_count = static_cast<int>(f.integer("candidate_count"));
  if (c.candidate_count < 1) throw ConfigError("candidate_count", "must be at least 1");
  if (f.has("kernel")) c.kernel = wrap("kernel", [&] { return gp::kernel_family_from_string(f.string("kernel")); });
  if (f.has("gp_noise")) {
    c.gp_noise = f.number("gp_noise");
    if (!(*c.gp_noise > 0.0)) throw ConfigError("gp_noise", "must be positive");
  }
  if (f.has("runs")) c.runs = static_cast<int>(f.integer("runs"));
  if (c.runs < 1) throw ConfigError("runs", "must be at least 1");
  if (f.has("base_seed")) {
    const json& s = f.raw("base_seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("base_seed", "expected a non-negative integer");
    }
    c.base_seed = s.get<std::uint64_t>();
  }
  if (f.has("output")) c.output = f.string("output");
  if (f.has("time_grid_points")) c.time_grid_points = static_cast<int>(f.integer("time_grid_points"));
  if (c.time_grid_points < 1) throw ConfigError("time_grid_points", "must be at least 1");
  if (f.has("write_traces")) c.write_traces = f.boolean("write_traces");
  if (f.has("threads")) c.threads = static_cast<int>(f.integer("threads"));
  if (c.threads < 1) throw ConfigError("threads", "must be at least 1");

  // Null-valued optional fields are accepted and mean "unset".
  for (const char* key : {"horizon", "budget", "noise_sd", "gp_noise", "mode", "workers", "strategy"}) {
    if (doc.contains(key)) f.raw(key);
  }
  f.finish();
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return parse_experiment_config(doc);
}

ordered_json emit_experiment_config(const ExperimentConfig& c) {
  ordered_json out;
  out["benchmark"] = c.benchmark;
  ordered_json arms = ordered_json::array();
  for (const auto& arm : c.arms) {
    ordered_json a;
    a["name"] = arm.name;
    a["mode"] = std::string(sim::to_string(arm.mode));
    a["workers"] = arm.workers;
    a["strategy"] = strategy_to_json(arm.strategy);
    arms.push_back(a);
  }
  out["arms"] = arms;
  out["horizon"] = c.horizon ? ordered_json(*c.horizon) : ordered_json(nullptr);
  out["budget"] = c.budget ? ordered_json(*c.budget) : ordered_json(nullptr);
  ordered_json td = time_distribution_to_json(c.times.base);
  td["unit_mean"] = c.times.unit_mean;
  out["time_distribution"] = td;
  out["noise_sd"] = c.noise_sd ? ordered_json(*c.noise_sd) : ordered_json(nullptr);
  out["n_init"] = c.n_init;
  out["init_method"] = c.init_method == sim::InitMethod::Random ? "random" : "uncertainty";
  out["refit_period"] = c.refit_period;
  out["fit_budget"] = c.fit_budget;
  out["candidate_count"] = c.candidate_count;
  out["kernel"] = std::string(gp::to_string(c.kernel));
  out["gp_noise"] = c.gp_noise ? ordered_json(*c.gp_noise) : ordered_json(nullptr);
  out["runs"] = c.runs;
  out["base_seed"] = c.base_seed;
  out["output"] = c.output;
  out["time_grid_points"] = c.time_grid_points;
  out["write_traces"] = c.write_traces;
  out["threads"] = c.threads;
  return out;
}

}  // namespace ptsbo::harness
