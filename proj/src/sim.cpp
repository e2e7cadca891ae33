#include "aoicov/sim.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "aoicov/error.hpp"
#include "aoicov/parallel.hpp"

namespace aoicov {

namespace {

constexpr double kPi = std::numbers::pi;

// Received interference contribution P_j h r^-alpha for one node at squared
// distance r2.
inline double node_power(double class_power, double fading, double r2, double half_alpha) {
  return class_power * fading * std::exp(-half_alpha * std::log(r2));
}

class PhysicalSlots {
 public:
  PhysicalSlots(const PhysicalMode& mode, Engine& rng)
      : params_(mode.params),
        outer_(mode.field_radius.value_or(default_field_radius(mode.params))),
        inner_(mode.exclusion_radius),
        half_alpha_(mode.params.pathloss_exp / 2.0),
        link_gain_(mode.params.tx_power *
                   std::pow(mode.params.link_distance, -mode.params.pathloss_exp)),
        static_field_(mode.static_field) {
    if (static_field_) {
      for (const auto& c : params_.interferers) {
        const double area = kPi * (outer_ * outer_ - inner_ * inner_);
        std::poisson_distribution<long> count(c.density * area);
        const long k = c.density > 0.0 ? count(rng) : 0;
        for (long i = 0; i < k; ++i) {
          const double r2 = inner_ * inner_ + uniform01(rng) * (outer_ * outer_ - inner_ * inner_);
          fixed_.push_back({c.power, r2});
        }
      }
    }
  }

  bool next(Engine& rng) {
    const double signal = link_gain_ * exponential1(rng);
    // Success iff signal >= delta (N_o + I): stop as soon as I exceeds the budget.
    const double budget = signal / params_.target_sinr - params_.noise;
    if (budget < 0.0) return false;
    double interference = 0.0;
    if (static_field_) {
      for (const auto& node : fixed_) {
        interference += node_power(node.power, exponential1(rng), node.r2, half_alpha_);
        if (interference > budget) return false;
      }
      return true;
    }
    const double span = outer_ * outer_ - inner_ * inner_;
    for (const auto& c : params_.interferers) {
      if (c.density <= 0.0) continue;
      std::poisson_distribution<long> count(c.density * kPi * span);
      const long k = count(rng);
      for (long i = 0; i < k; ++i) {
        const double r2 = inner_ * inner_ + uniform01(rng) * span;
        interference += node_power(c.power, exponential1(rng), r2, half_alpha_);
        if (interference > budget) return false;
      }
    }
    return true;
  }

 private:
  struct Node {
    double power;
    double r2;
  };
  const SystemParams& params_;
  double outer_;
  double inner_;
  double half_alpha_;
  double link_gain_;
  bool static_field_;
  std::vector<Node> fixed_;
};

void validate_physical(const PhysicalMode& mode) {
  validate(mode.params);
  if (mode.field_radius && !(*mode.field_radius > 0.0))
    throw ValidationError("field_radius must be > 0");
  if (!(mode.exclusion_radius >= 0.0)) throw ValidationError("exclusion_radius must be >= 0");
  const double outer = mode.field_radius.value_or(default_field_radius(mode.params));
  if (mode.exclusion_radius >= outer)
    throw ValidationError("exclusion_radius must be smaller than field_radius");
}

}  // namespace

void validate(const SimConfig& config) {
  validate(config.timing);
  if (config.periods < 1) throw ValidationError("periods must be >= 1");
  if (config.v_th && !(*config.v_th > 0.0)) throw ValidationError("v_th must be > 0");
  if (const auto* a = std::get_if<AbstractMode>(&config.mode)) {
    if (!(a->p_s > 0.0 && a->p_s <= 1.0)) throw ValidationError("p_s must lie in (0, 1]");
  } else {
    validate_physical(std::get<PhysicalMode>(config.mode));
  }
}

SimRun run(const SimConfig& config, const SimObserver* observer) {
  validate(config);
  const Timing& t = config.timing;
  const int n_max = t.max_retx;
  Engine rng(config.seed);

  std::optional<PhysicalSlots> physical;
  double p_s = 1.0;
  if (const auto* a = std::get_if<AbstractMode>(&config.mode)) {
    p_s = a->p_s;
  } else {
    physical.emplace(std::get<PhysicalMode>(config.mode), rng);
  }
  auto attempt_succeeds = [&]() {
    return physical ? physical->next(rng) : uniform01(rng) < p_s;
  };

  SimRun out;
  out.timing = t;
  out.v_th = config.v_th;
  out.periods = config.periods;
  out.attempt_histogram.assign(n_max, 0);

  const double period_length = t.sensing_period();
  bool have_previous = false;
  std::uint64_t prev_period = 0;
  int prev_attempt = 0;
  double prev_age = 0.0;

  for (std::uint64_t k = 0; k < config.periods; ++k) {
    for (int n = 1; n <= n_max; ++n) {
      ++out.transmissions;
      const bool ok = attempt_succeeds();
      if (observer && observer->on_attempt) observer->on_attempt(k, n, ok);
      if (!ok) continue;

      const double age = (n - 1) * t.retx_interval + t.tx_duration;
      ++out.updates;
      ++out.attempt_histogram[n - 1];
      if (observer && observer->on_update)
        observer->on_update(static_cast<double>(k) * period_length + age, age);

      if (have_previous) {
        // Interval length from the period/attempt indices, not absolute times,
        // so long runs keep full precision.
        const double gap = static_cast<double>(k - prev_period) * period_length +
                           (n - prev_attempt) * t.retx_interval;
        const double start = prev_age;
        const double peak = prev_age + gap;
        out.time_horizon += gap;
        out.aoi_integral += gap * (start + peak) / 2.0;
        if (config.v_th) {
          const double v = *config.v_th;
          if (v <= start) {
            out.violated_time += gap;
          } else if (v < peak) {
            out.violated_time += peak - v;
          }
        }
      }
      have_previous = true;
      prev_period = k;
      prev_attempt = n;
      prev_age = age;
      break;
    }
  }
  return out;
}

std::vector<SimRun> run_trials(const SimConfig& config, std::size_t trials, unsigned threads) {
  validate(config);
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (trials > config.periods) trials = config.periods;
  std::vector<SimRun> runs(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    SimConfig c = config;
    c.periods = config.periods / trials + (i < config.periods % trials ? 1 : 0);
    c.seed = derive_seed(config.seed, i);
    runs[i] = run(c);
  });
  return runs;
}

double sample_interference(const SystemParams& params, double field_radius,
                           double exclusion_radius, Engine& rng) {
  if (!(field_radius > exclusion_radius && exclusion_radius >= 0.0))
    throw ValidationError("need 0 <= exclusion_radius < field_radius");
  const double span = field_radius * field_radius - exclusion_radius * exclusion_radius;
  const double half_alpha = params.pathloss_exp / 2.0;
  double total = 0.0;
  for (const auto& c : params.interferers) {
    if (c.density <= 0.0) continue;
    std::poisson_distribution<long> count(c.density * kPi * span);
    const long k = count(rng);
    for (long i = 0; i < k; ++i) {
      const double r2 = exclusion_radius * exclusion_radius + uniform01(rng) * span;
      total += node_power(c.power, exponential1(rng), r2, half_alpha);
    }
  }
  return total;
}

double truncation_tail_bound(const SystemParams& params, double field_radius) {
  const double alpha = params.pathloss_exp;
  const double scale = params.target_sinr * std::pow(params.link_distance, alpha) / params.tx_power;
  double sum = 0.0;
  for (const auto& c : params.interferers) sum += c.density * c.power;
  return 2.0 * kPi * scale * sum * std::pow(field_radius, 2.0 - alpha) / (alpha - 2.0);
}

double default_field_radius(const SystemParams& params) {
  const double alpha = params.pathloss_exp;
  const double zeta_term =
      interference_coefficient(params) / std::pow(params.tx_power, 2.0 / alpha);
  if (zeta_term <= 0.0) return 10.0 * params.link_distance;
  const double tolerance = std::min(1e-4, 1e-3 * zeta_term);
  const double at_unit = truncation_tail_bound(params, 1.0);
  const double radius = std::pow(at_unit / tolerance, 1.0 / (alpha - 2.0));
  return std::max(radius, 10.0 * params.link_distance);
}

std::vector<std::uint8_t> physical_slot_trace(const PhysicalMode& mode, std::size_t slots,
                                              std::uint64_t seed) {
  validate_physical(mode);
  Engine rng(seed);
  PhysicalSlots sampler(mode, rng);
  std::vector<std::uint8_t> trace(slots);
  for (auto& s : trace) s = sampler.next(rng) ? 1 : 0;
  return trace;
}

AoiStats estimate_stats(std::span<const SimRun> runs, const StatsOptions& options) {
  if (runs.empty()) throw ValidationError("estimate_stats needs at least one run");
  const SimRun& first = runs.front();
  double horizon = 0.0, integral = 0.0, violated = 0.0;
  AoiStats s;
  for (const auto& r : runs) {
    if (r.timing.max_retx != first.timing.max_retx ||
        r.timing.retx_interval != first.timing.retx_interval ||
        r.timing.tx_duration != first.timing.tx_duration || r.v_th != first.v_th)
      throw ValidationError("runs have inconsistent timing or v_th");
    horizon += r.time_horizon;
    integral += r.aoi_integral;
    violated += r.violated_time;
    s.updates += r.updates;
    s.transmissions += r.transmissions;
    s.periods += r.periods;
  }
  if (!(horizon > 0.0)) throw ValidationError("runs contain fewer than two updates");
  s.avg_aoi = integral / horizon;
  s.transmissions_per_period = static_cast<double>(s.transmissions) / s.periods;
  s.success_rate = static_cast<double>(s.updates) / s.transmissions;
  if (first.v_th) s.violation = violated / horizon;
  if (options.correlation) {
    const double target = eta_threshold(*options.correlation);
    if (!first.v_th || std::abs(*first.v_th - target) > 1e-12 * std::max(1.0, target))
      throw ValidationError("coverage needs runs simulated at v_th = eta_threshold(cp)");
    s.coverage = 1.0 - *s.violation;
  }
  if (options.sensing_energy && options.tx_power) {
    const Timing& t = first.timing;
    s.energy = (*options.sensing_energy * s.periods +
                static_cast<double>(s.transmissions) * *options.tx_power * t.tx_duration) /
               (static_cast<double>(s.periods) * t.max_retx);
  }
  return s;
}

}  // namespace aoicov
