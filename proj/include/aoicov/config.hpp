#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoicov/channel.hpp"
#include "aoicov/coverage.hpp"

namespace aoicov {

enum class ExperimentKind { AvgAoiSweep, ViolationSweep, EnergySweep, OptimalPowerVsN, Validate };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

/// Sweep axis: transmit power in dBm, or N for OptimalPowerVsN.
struct Sweep {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
};

/// Per-curve overrides layered on the base parameters.
struct Overlay {
  std::optional<int> max_retx;
  std::optional<double> retx_interval;
  std::optional<double> link_distance;
};

struct SimSettings {
  bool enabled = true;
  std::uint64_t seed = 1;
  std::uint64_t periods = 100000;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::AvgAoiSweep;
  std::optional<Sweep> sweep;  // unset: kind default
  std::vector<Overlay> overlays;
  SystemParams system;
  CorrelationParams correlation;
  double sensing_energy = 1.0;
  Environment environment = Environment::General;
  std::optional<double> v_th_override;
  SimSettings sim;

  Sweep effective_sweep() const;
  /// Base parameters with `overlay` applied.
  SystemParams system_for(const Overlay& overlay) const;
  std::vector<Overlay> effective_overlays() const;
};

/// Defaults: the reference parameter table (two interferer classes at
/// 8.7e-5 nodes/m^2 with 40 mW and 30 mW, d = 20, delta = 1, T_R = T_o = 1,
/// theta_th = 0.1, eta = 0.6, eps = 0.6, N_o = 1e-5, alpha = 3.5, E_s = 1),
/// correlation u = 1.76e-2, v = 1.2e-3, P_t = 0 dBm, N = 10.
ExperimentSpec default_spec();

/// Parses the flat `key = value` format; `#` starts a comment. Throws
/// ConfigError naming the key and line on unknown keys, malformed values, or
/// invariant violations.
ExperimentSpec parse_config(std::string_view text);
ExperimentSpec load_config(const std::filesystem::path& path);

}  // namespace aoicov
