#include "ptsbo/benchmarks/benchmarks.hpp"
#include "ptsbo/errors.hpp"
#include "ptsbo/harness/config.hpp"
#include "ptsbo/harness/experiment.hpp"
#include "ptsbo/harness/theory_suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace ptsbo;

namespace {

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
}

void write_json(const nlohmann::ordered_json& doc, const std::optional<std::string>& out_dir, const std::string& name) {
  if (!out_dir) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  fs::create_directories(*out_dir);
  std::ofstream out(fs::path(*out_dir) / name, std::ios::binary);
  out << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel Thompson sampling simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> runs;

  auto* run = app.add_subcommand("run", "Run an experiment config and write a report bundle");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--seed", seed, "Override base_seed");
  run->add_option("--out", out_dir, "Override the output directory");
  run->add_option("--runs", runs, "Override the number of runs");
  bool with_theory = false;
  run->add_flag("--theory", with_theory, "Also run the theory suite into the bundle");

  auto* theory = app.add_subcommand("theory", "Run the closed-form and Monte Carlo validators");
  theory->add_option("--config", config_path, "Theory suite settings (JSON)");
  theory->add_option("--seed", seed, "Override the suite seed");
  theory->add_option("--out", out_dir, "Write theory.json here instead of stdout");

  std::string bundle_dir;
  std::string axis = "by_count";
  auto* plot = app.add_subcommand("plot-data", "Export per-arm regret curves from a bundle");
  plot->add_option("--bundle", bundle_dir, "Report bundle directory")->required();
  plot->add_option("--axis", axis, "by_count or by_time")->check(CLI::IsMember({"by_count", "by_time"}));
  plot->add_option("--out", out_dir, "Destination directory")->required();

  auto* list = app.add_subcommand("list-benchmarks", "Print the benchmark table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) {
      auto config = harness::load_experiment_config(config_path);
      if (seed) config.base_seed = *seed;
      if (out_dir) config.output = *out_dir;
      if (runs) {
        if (*runs < 1) throw ConfigError("--runs", "must be at least 1");
        config.runs = *runs;
      }
      auto bundle = harness::run_experiment(config);
      if (with_theory) {
        harness::TheorySuiteConfig tc;
        tc.seed = config.base_seed;
        bundle.theory = harness::run_theory_suite(tc);
      }
      harness::write_bundle(bundle, config.output);
      std::cout << "wrote " << config.output << "\n";
      if (bundle.theory && !(*bundle.theory)["all_pass"].get<bool>()) return kRuntimeError;
    } else if (*theory) {
      harness::TheorySuiteConfig tc;
      if (!config_path.empty()) tc = harness::parse_theory_config(read_json(config_path));
      if (seed) tc.seed = *seed;
      const auto report = harness::run_theory_suite(tc);
      write_json(report, out_dir, "theory.json");
      std::cerr << report["passed"].get<int>() << " passed, " << report["failed"].get<int>() << " failed\n";
      if (!report["all_pass"].get<bool>()) return kRuntimeError;
    } else if (*plot) {
      const auto bundle = harness::load_bundle(bundle_dir);
      const auto which = axis == "by_time" ? metrics::Axis::ByTime : metrics::Axis::ByCount;
      for (const auto& p : harness::emit_plot_data(bundle, which, *out_dir)) std::cout << p.string() << "\n";
    } else if (*list) {
      std::cout << "name,dim,noise_sd,optimum\n";
      for (const auto& b : bench::all_benchmarks()) {
        std::cout << b.name << "," << b.dim << "," << b.noise_sd << "," << b.opt_value << "\n";
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const harness::RunFailure& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
