// aoicov: runs the experiment sweeps and prints summaries of their CSVs.
#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "aoicov/config.hpp"
#include "aoicov/csv.hpp"
#include "aoicov/error.hpp"
#include "aoicov/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Age-of-information metrics: analytic sweeps cross-checked by simulation"};

  std::optional<std::string> config_path;
  std::optional<std::string> experiment;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> periods;
  std::optional<unsigned> threads;
  std::string output = ".";
  bool no_sim = false;
  std::vector<std::string> summarize;

  app.add_option("--config", config_path, "flat key = value config file (defaults otherwise)");
  app.add_option("--experiment", experiment,
                 "avg_aoi_sweep | violation_sweep | energy_sweep | optimal_power_vs_n | validate");
  app.add_option("--seed", seed, "master RNG seed");
  app.add_option("--periods", periods, "sensing periods simulated per sweep point")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--output", output, "directory receiving <experiment>.csv");
  app.add_flag("--no-sim", no_sim, "analytic columns only");
  app.add_option("--summarize", summarize, "print summaries of existing CSVs and exit")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!summarize.empty()) {
      std::vector<aoicov::CsvTable> tables;
      for (const auto& path : summarize) tables.push_back(aoicov::read_csv(path));
      aoicov::report_summary(tables, std::cout);
      return kExitOk;
    }

    aoicov::ExperimentSpec spec =
        config_path ? aoicov::load_config(*config_path) : aoicov::default_spec();
    if (experiment) {
      const auto kind = aoicov::parse_experiment_kind(*experiment);
      if (kind != spec.kind && !config_path) spec.sweep.reset();
      spec.kind = kind;
    }
    if (seed) spec.sim.seed = *seed;
    if (periods) spec.sim.periods = *periods;
    if (threads) spec.sim.threads = *threads;
    if (no_sim) spec.sim.enabled = false;
    if (spec.kind == aoicov::ExperimentKind::Validate && !spec.sim.enabled) {
      std::cerr << "error: validate needs the simulator; drop --no-sim\n";
      return kExitUsage;
    }

    aoicov::ExperimentResult result;
    const auto path = aoicov::run_experiment(spec, output, &result);
    std::cout << "wrote " << path.string() << " (" << result.table.rows.size() << " rows)\n";
    if (spec.kind == aoicov::ExperimentKind::Validate) {
      const aoicov::CsvTable tables[] = {result.table};
      aoicov::report_summary(tables, std::cout);
      return result.checks_passed ? kExitOk : kExitCheckFailed;
    }
    return kExitOk;
  } catch (const aoicov::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const aoicov::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const aoicov::InfeasibleError& e) {
    std::cerr << "infeasible (" << e.parameter() << "): " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
