#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "aoicov/channel.hpp"
#include "aoicov/coverage.hpp"
#include "aoicov/rng.hpp"

namespace aoicov {

/// Every attempt succeeds independently with probability p_s.
struct AbstractMode {
  double p_s = 1.0;
};

/// Every attempt draws a Rayleigh-faded link and a fresh PPP interference
/// field and succeeds iff SINR >= target_sinr. Interferers live in the
/// annulus [exclusion_radius, field_radius] around the receiver.
struct PhysicalMode {
  SystemParams params;                // channel part; timing comes from SimConfig
  std::optional<double> field_radius;  // default: default_field_radius(params)
  double exclusion_radius = 0.0;
  // Keep interferer positions fixed for a whole run (fading still redrawn).
  // Breaks slot independence; not used for formula validation.
  bool static_field = false;
};

struct SimConfig {
  std::variant<AbstractMode, PhysicalMode> mode = AbstractMode{};
  Timing timing;
  std::uint64_t periods = 1;
  std::uint64_t seed = 1;
  std::optional<double> v_th;
};

void validate(const SimConfig& config);

/// Accumulated sample-path statistics. Accounting runs from the first
/// successful update to the last one, so every interval is complete.
struct SimRun {
  Timing timing;
  std::optional<double> v_th;
  std::uint64_t periods = 0;
  double time_horizon = 0.0;
  double aoi_integral = 0.0;
  double violated_time = 0.0;
  std::uint64_t updates = 0;
  std::uint64_t transmissions = 0;
  // attempt_histogram[n - 1]: updates whose successful attempt was n, i.e.
  // Z = (n - 1) T_R + T_o.
  std::vector<std::uint64_t> attempt_histogram;

  bool operator==(const SimRun&) const = default;
};

/// Optional hooks for inspecting a run.
struct SimObserver {
  std::function<void(std::uint64_t period, int attempt, bool success)> on_attempt;
  // Reception time and the AoI right after the update (= Z).
  std::function<void(double time, double age)> on_update;
};

SimRun run(const SimConfig& config, const SimObserver* observer = nullptr);

/// Splits config.periods over `trials` independent runs with seeds derived
/// from (config.seed, trial index); results are ordered by trial regardless
/// of `threads`.
std::vector<SimRun> run_trials(const SimConfig& config, std::size_t trials,
                               unsigned threads = 0);

/// Interference power at the receiver from one PPP draw.
double sample_interference(const SystemParams& params, double field_radius,
                           double exclusion_radius, Engine& rng);

/// Upper bound on the part of the success exponent contributed by
/// interferers beyond `field_radius`:
///   sum_j lambda_j 2 pi (delta d^alpha P_j / P_t) R^(2-alpha) / (alpha - 2).
double truncation_tail_bound(const SystemParams& params, double field_radius);

/// Smallest radius whose truncation_tail_bound is at most
/// min(1e-4, 1e-3 * zeta / P_t^(2/alpha)).
double default_field_radius(const SystemParams& params);

/// Success indicator of `slots` consecutive physical-mode attempts.
std::vector<std::uint8_t> physical_slot_trace(const PhysicalMode& mode, std::size_t slots,
                                              std::uint64_t seed);

struct AoiStats {
  double avg_aoi = 0.0;
  std::optional<double> violation;
  std::optional<double> coverage;
  std::optional<double> energy;  // per retransmission interval
  double transmissions_per_period = 0.0;
  double success_rate = 0.0;  // updates / transmissions
  std::uint64_t updates = 0;
  std::uint64_t transmissions = 0;
  std::uint64_t periods = 0;
};

struct StatsOptions {
  // When set, the runs' v_th must equal eta_threshold(*correlation).
  std::optional<CorrelationParams> correlation;
  std::optional<double> sensing_energy;
  std::optional<double> tx_power;
};

/// Pools runs into one estimate: ratios of summed integrals to summed horizons.
AoiStats estimate_stats(std::span<const SimRun> runs, const StatsOptions& options = {});

}  // namespace aoicov
