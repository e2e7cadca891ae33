#pragma once

#include <span>

#include "aoicov/timing.hpp"

namespace aoicov {

/// Moments of the update-timing variables.
///
///   X: time from the first sensing after an update to the next update
///      (geometric in attempts, unbounded).
///   Z: time from an update's own sensing instant to its reception
///      (geometric truncated at N attempts).
///   Q: area under the AoI sawtooth between consecutive updates.
///   L: time between consecutive updates.
struct TimingMoments {
  double e_x = 0.0;
  double e_x2 = 0.0;
  double e_z = 0.0;
  double e_z2 = 0.0;
  double e_q = 0.0;
  double e_l = 0.0;
};

TimingMoments timing_moments(double p_s, const Timing& timing);

/// Long-run time-average AoI: T_R (1/p_s + (N - 2)/2) + T_o.
double average_aoi(double p_s, const Timing& timing);

struct ViolationQuery {
  double v_th = 1.0;
  double p_s = 1.0;
  Timing timing;
};

/// Number of attempts whose completion age fits under the threshold,
/// floor((v_th - T_o) / T_R) + 1, with a 1e-12 snap to the nearest integer
/// before flooring.
long attempts_within(double v_th, const Timing& timing);

/// Long-run fraction of time the AoI exceeds v_th.
///
/// Returns 1 for v_th <= T_o since the AoI never drops below T_o.
double violation_probability(const ViolationQuery& q);

/// True iff violation_probability is nonincreasing along an increasing p_s grid.
bool violation_probability_monotonicity_witness(std::span<const double> p_grid,
                                                double v_th, const Timing& timing);

}  // namespace aoicov
