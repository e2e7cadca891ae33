#pragma once

#include "aoicov/aoi.hpp"

namespace aoicov {

/// Spatio-temporal correlation rho(l, tau) = exp(-u l - v tau) plus the
/// error-tolerable-sensing (ETS) coverage targets built on it.
struct CorrelationParams {
  double u = 1.76e-2;       // spatial decay [1/length]
  double v = 1.2e-3;        // temporal decay [1/time]
  double theta_th = 0.1;    // tolerated estimation error, (0, 1)
  double eta = 0.6;         // required fraction of the maximum coverage, (0, 1]
  double eps_target = 0.6;  // required eta-coverage probability, (0, 1)
};

void validate(const CorrelationParams& cp);

double correlation(double l, double tau, const CorrelationParams& cp);

/// 1 - correlation(l, tau)^2.
double estimation_error(double l, double tau, const CorrelationParams& cp);

/// Radius at zero age where the estimation error reaches theta_th.
double max_radius(const CorrelationParams& cp);
double max_coverage(const CorrelationParams& cp);

/// ETS radius after `aoi` time units: r_max - (v/u) aoi, clamped at 0.
double radius_at_age(double aoi, const CorrelationParams& cp);

/// AoI below which the ETS coverage keeps at least eta of its maximum area:
/// (u/v) r_max (1 - sqrt(eta)).
double eta_threshold(const CorrelationParams& cp);

/// Probability the ETS coverage exceeds eta of its maximum, i.e.
/// 1 - violation_probability(eta_threshold(cp)).
double eta_coverage_probability(const CorrelationParams& cp, double p_s,
                                const Timing& timing);

}  // namespace aoicov
