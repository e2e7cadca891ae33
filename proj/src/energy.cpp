#include "aoicov/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "aoicov/error.hpp"
#include "aoicov/numeric.hpp"
#include "aoicov/units.hpp"

namespace aoicov {

double avg_retransmissions(double p_s, int max_retx) {
  if (!(p_s > 0.0 && p_s <= 1.0)) throw DomainError("p_s must lie in (0, 1]");
  if (max_retx < 1) throw ValidationError("max_retx must satisfy N >= 1");
  return one_minus_pow1m(p_s, max_retx) / p_s;
}

double avg_energy(double p_s, const EnergyParams& params, Environment env) {
  if (!(p_s > 0.0 && p_s < 1.0))
    throw DomainError("avg_energy requires 0 < p_s < 1 (p_s = 1 needs infinite power)");
  if (!(params.sensing_energy >= 0.0)) throw ValidationError("sensing_energy must be >= 0");
  const Timing& t = params.system.timing;
  const double power = stp_inverse(p_s, params.system, env);
  return params.sensing_energy / t.max_retx +
         power * t.tx_duration * avg_retransmissions(p_s, t.max_retx) / t.max_retx;
}

double avg_energy_at_power(double tx_power, const EnergyParams& params, Environment env) {
  if (!(params.sensing_energy >= 0.0)) throw ValidationError("sensing_energy must be >= 0");
  const Timing& t = params.system.timing;
  const double p = stp_at(params.system, env, tx_power);
  const double n_bar = p > 0.0 ? avg_retransmissions(p, t.max_retx) : t.max_retx;
  return params.sensing_energy / t.max_retx + tx_power * t.tx_duration * n_bar / t.max_retx;
}

double stationary_fn_noise(double p_s, int max_retx) {
  const double n = max_retx;
  const double log_p = std::log(p_s);
  const double served = one_minus_pow1m(p_s, n);
  return ((1.0 + log_p) * served - n * p_s * pow1m(p_s, n - 1.0) * log_p) /
         (p_s * p_s * log_p * log_p);
}

double stationary_fn_intf(double p_s, int max_retx, double alpha) {
  const double n = max_retx;
  const double log_p = std::log(p_s);
  const double served = one_minus_pow1m(p_s, n);
  return ((alpha + 2.0 * log_p) * served - 2.0 * n * p_s * pow1m(p_s, n - 1.0) * log_p) /
         (p_s * p_s * std::pow(-log_p, (2.0 + alpha) / 2.0));
}

namespace {

constexpr int kScanPoints = 2000;
constexpr double kScanLow = 1e-6;
constexpr double kScanHigh = 1.0 - 1e-9;

const std::vector<double>& scan_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g(kScanPoints);
    const double a = std::log(kScanLow);
    const double b = std::log(kScanHigh);
    for (int i = 0; i < kScanPoints; ++i)
      g[i] = std::exp(a + (b - a) * i / (kScanPoints - 1));
    g.back() = kScanHigh;
    return g;
  }();
  return grid;
}

template <typename F>
std::vector<double> scan_roots(F&& f) {
  const auto& grid = scan_grid();
  std::vector<double> roots;
  double prev = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = f(grid[i]);
    if ((prev < 0.0) != (cur < 0.0)) roots.push_back(bisect_root(f, grid[i - 1], grid[i]));
    prev = cur;
  }
  return roots;
}

}  // namespace

std::optional<StationaryPoints> find_stationary_points(int max_retx, double alpha,
                                                       Environment env) {
  if (max_retx < 1) throw ValidationError("max_retx must satisfy N >= 1");
  std::vector<double> roots;
  switch (env) {
    case Environment::NoiseLimited:
      roots = scan_roots([&](double p) { return stationary_fn_noise(p, max_retx); });
      break;
    case Environment::InterferenceLimited:
      if (!(alpha > 2.0)) throw DomainError("alpha must be > 2");
      roots = scan_roots([&](double p) { return stationary_fn_intf(p, max_retx, alpha); });
      break;
    case Environment::General:
      throw ValidationError(
          "stationary points are defined for the noise- and interference-limited environments");
  }
  if (roots.empty()) return std::nullopt;
  if (roots.size() != 2)
    throw InternalError("expected 0 or 2 stationary points, found " +
                        std::to_string(roots.size()) + " for N=" + std::to_string(max_retx));
  return StationaryPoints{roots[0], roots[1]};
}

int interference_threshold(double alpha) {
  static std::mutex mutex;
  static std::map<double, int> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(alpha); it != memo.end()) return it->second;
  }
  constexpr int kMaxN = 1000;
  int n = 1;
  while (n <= kMaxN &&
         !find_stationary_points(n, alpha, Environment::InterferenceLimited).has_value())
    ++n;
  if (n > kMaxN) throw InternalError("no stationary points up to N=1000");
  std::lock_guard lock(mutex);
  memo.emplace(alpha, n);
  return n;
}

double min_feasible_stp(const CorrelationParams& cp, const Timing& timing) {
  validate(cp);
  validate(timing);
  const double v_th = eta_threshold(cp);
  const double budget = 1.0 - cp.eps_target;
  auto violation = [&](double p) { return violation_probability({v_th, p, timing}); };

  if (v_th <= timing.tx_duration)
    throw InfeasibleError("eta", "eta-coverage threshold v_th=" + std::to_string(v_th) +
                                     " does not exceed the AoI floor T_o; lower eta or "
                                     "tx_duration");
  const double best = violation(1.0);
  if (best > budget) {
    throw InfeasibleError(
        "max_retx", "coverage target infeasible: violation probability at p_s=1 is " +
                        std::to_string(best) + " > 1 - eps_target = " +
                        std::to_string(budget) + " with max_retx=" +
                        std::to_string(timing.max_retx) + " and v_th=" + std::to_string(v_th));
  }

  constexpr double kLowest = 1e-12;
  if (violation(kLowest) <= budget) return kLowest;
  auto [lo, hi] = bisect_predicate([&](double p) { return violation(p) <= budget; }, kLowest,
                                   1.0, [](double l, double h) { return h - l < 1e-13; });
  (void)lo;
  if (hi >= 1.0)
    throw InfeasibleError("eps_target", "coverage target reachable only at p_s = 1 (infinite power)");
  return hi;
}

namespace {

OptimResult optimize_general(const EnergyParams& params, double p_cov) {
  const double floor_dbm = mw_to_dbm(stp_inverse(p_cov, params.system, Environment::General));
  auto energy_dbm = [&](double dbm) {
    return avg_energy_at_power(dbm_to_mw(dbm), params, Environment::General);
  };
  constexpr int kGrid = 4000;
  constexpr double kSpanDb = 80.0;
  const double step = kSpanDb / kGrid;
  int best = 0;
  double best_energy = energy_dbm(floor_dbm);
  for (int i = 1; i <= kGrid; ++i) {
    const double e = energy_dbm(floor_dbm + i * step);
    if (e < best_energy) {
      best_energy = e;
      best = i;
    }
  }
  const double lo = floor_dbm + std::max(0, best - 1) * step;
  const double hi = floor_dbm + std::min(kGrid, best + 1) * step;
  double dbm = golden_section_min(energy_dbm, lo, hi, 1e-4);
  if (energy_dbm(floor_dbm + best * step) < energy_dbm(dbm)) dbm = floor_dbm + best * step;

  OptimResult r;
  r.p_cov = p_cov;
  r.p_t_star = dbm_to_mw(dbm);
  r.p_star = std::max(p_cov, stp_at(params.system, Environment::General, r.p_t_star));
  r.energy_at_opt = avg_energy_at_power(r.p_t_star, params, Environment::General);
  return r;
}

}  // namespace

OptimResult optimize(const EnergyParams& params, const CorrelationParams& cp,
                     Environment env) {
  validate(params.system);
  if (!(params.sensing_energy >= 0.0)) throw ValidationError("sensing_energy must be >= 0");
  const Timing& t = params.system.timing;
  const double p_cov = min_feasible_stp(cp, t);
  if (env == Environment::General) return optimize_general(params, p_cov);

  OptimResult r;
  r.p_cov = p_cov;
  r.stationary = find_stationary_points(t.max_retx, params.system.pathloss_exp, env);
  auto energy = [&](double p) { return avg_energy(p, params, env); };
  r.p_star = p_cov;
  if (r.stationary) {
    const double s1 = r.stationary->local_max;
    const double s2 = r.stationary->local_min;
    if (s1 < p_cov && p_cov < s2) {
      r.p_star = s2;
    } else if (p_cov >= s2) {
      r.p_star = p_cov;
    } else {
      // Equal energies resolve to s2: same cost, lower AoI.
      r.p_star = energy(s2) <= energy(p_cov) ? s2 : p_cov;
    }
  }
  r.p_t_star = stp_inverse(r.p_star, params.system, env);
  r.energy_at_opt = energy(r.p_star);
  return r;
}

}  // namespace aoicov
