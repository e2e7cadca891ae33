#include "aoicov/aoi.hpp"

#include <algorithm>
#include <cmath>

#include "aoicov/error.hpp"
#include "aoicov/numeric.hpp"

namespace aoicov {

namespace {

void require_probability(double p_s) {
  if (!(p_s > 0.0 && p_s <= 1.0)) throw DomainError("p_s must lie in (0, 1]");
}

}  // namespace

TimingMoments timing_moments(double p_s, const Timing& timing) {
  require_probability(p_s);
  validate(timing);
  const double tr = timing.retx_interval;
  const double to = timing.tx_duration;
  const double n = timing.max_retx;
  const double p = p_s;

  const double qn = pow1m(p, n);
  const double qn1 = pow1m(p, n + 1.0);
  const double qn2 = pow1m(p, n + 2.0);
  const double served = one_minus_pow1m(p, n);  // 1 - (1 - p)^N
  const double tail = 1.0 - qn * (1.0 + p * n);  // 1 - (1 - p)^N (1 + pN)

  TimingMoments m;
  m.e_x = (1.0 / p - 1.0) * tr + to;
  m.e_x2 = 2.0 * tr * tr / (p * p) - (3.0 * tr - 2.0 * to) * tr / p + (tr - to) * (tr - to);
  m.e_z = tr * tail / (p * served) - tr + to;
  const double bracket = -n * n * qn2 + (2.0 * n * n + 2.0 * n - 1.0) * qn1 -
                         (n + 1.0) * (n + 1.0) * qn - p + 2.0;
  m.e_z2 = (tr - to) * (tr - to) +
           tr / (p * served) * (tr / p * bracket - 2.0 * (tr - to) * tail);
  m.e_q = n * tr * ((2.0 + (n - 2.0) * p) * tr + 2.0 * p * to) / (2.0 * p * served);
  m.e_l = n * tr / served;
  return m;
}

double average_aoi(double p_s, const Timing& timing) {
  require_probability(p_s);
  validate(timing);
  return timing.retx_interval * (1.0 / p_s + (timing.max_retx - 2.0) / 2.0) +
         timing.tx_duration;
}

long attempts_within(double v_th, const Timing& timing) {
  const double x = (v_th - timing.tx_duration) / timing.retx_interval;
  const double nearest = std::round(x);
  const double snapped = std::abs(x - nearest) < 1e-12 ? nearest : std::floor(x);
  return static_cast<long>(snapped) + 1;
}

double violation_probability(const ViolationQuery& q) {
  require_probability(q.p_s);
  validate(q.timing);
  if (!(q.v_th > 0.0)) throw ValidationError("v_th must be > 0");

  const double tr = q.timing.retx_interval;
  const double to = q.timing.tx_duration;
  const double n = q.timing.max_retx;
  const double p = q.p_s;
  const double v = q.v_th;
  if (v <= to) return 1.0;

  const double chi = static_cast<double>(attempts_within(v, q.timing));
  double value = 0.0;
  if (v <= n * tr) {
    const double q_chi = pow1m(p, chi);
    value = ((p * (to - tr - v) + tr) * one_minus_pow1m(p, chi) + p * tr * (n - chi * q_chi)) /
            (p * n * tr);
  } else {
    const double f = chi - 1.0;
    value = (p * tr * f + tr + p * to - p * v) * pow1m(p, f - n + 1.0) * one_minus_pow1m(p, n) /
            (p * n * tr);
  }
  return std::clamp(value, 0.0, 1.0);
}

bool violation_probability_monotonicity_witness(std::span<const double> p_grid,
                                                double v_th, const Timing& timing) {
  double previous = 2.0;
  for (double p : p_grid) {
    const double value = violation_probability({v_th, p, timing});
    // 1e-14 absorbs rounding between neighbouring grid points.
    if (value > previous + 1e-14) return false;
    previous = value;
  }
  return true;
}

}  // namespace aoicov
