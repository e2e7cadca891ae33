#pragma once

#include <optional>
#include <utility>

#include "aoicov/channel.hpp"
#include "aoicov/coverage.hpp"

namespace aoicov {

struct EnergyParams {
  double sensing_energy = 1.0;  // E_s, >= 0
  SystemParams system;
};

/// Average attempts per sensing period: (1 - (1 - p_s)^N) / p_s, in [1, N].
double avg_retransmissions(double p_s, int max_retx);

/// Average energy per retransmission interval when operating at p_s:
///   E_s / N + P_t(p_s) T_o Nbar / N,
/// where P_t(p_s) = stp_inverse(p_s). Requires 0 < p_s < 1.
double avg_energy(double p_s, const EnergyParams& params, Environment env);

/// Same quantity evaluated directly at a transmit power.
double avg_energy_at_power(double tx_power, const EnergyParams& params, Environment env);

/// Sign-carrying factor of dE/dp_s in the noise-limited environment
/// (dE/dp_s = xi T_o / N * f1).
double stationary_fn_noise(double p_s, int max_retx);

/// Interference-limited counterpart (dE/dp_s = zeta T_o / (2N) * f2).
double stationary_fn_intf(double p_s, int max_retx, double alpha);

struct StationaryPoints {
  double local_max = 0.0;  // s1
  double local_min = 0.0;  // s2
};

/// Roots of f1 (noise-limited) or f2 (interference-limited) in (0, 1).
///
/// Scans 2000 log-spaced points over [1e-6, 1 - 1e-9] for sign changes and
/// refines each by bisection. Throws InternalError unless zero or two roots
/// are found, and ValidationError for the general environment.
std::optional<StationaryPoints> find_stationary_points(int max_retx, double alpha,
                                                       Environment env);

/// Smallest N for which f2(., N, alpha) has two roots. Memoized per alpha.
int interference_threshold(double alpha);

/// Smallest p_s meeting the eta-coverage target, via bisection on the
/// (nonincreasing) violation probability. Throws InfeasibleError when even
/// p_s = 1 violates it.
double min_feasible_stp(const CorrelationParams& cp, const Timing& timing);

struct OptimResult {
  double p_cov = 0.0;
  std::optional<StationaryPoints> stationary;
  double p_star = 0.0;
  double p_t_star = 0.0;  // mW
  double energy_at_opt = 0.0;
};

/// Energy-minimizing operating point under the coverage constraint.
///
/// Closed-form environments follow the stationary-point case analysis; the
/// general environment grid-searches P_t in dB and refines by golden section.
OptimResult optimize(const EnergyParams& params, const CorrelationParams& cp,
                     Environment env);

}  // namespace aoicov
