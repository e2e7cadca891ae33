// Independent reference implementations used by the tests. Nothing here calls
// into the library's formulas.
#pragma once

#include <cmath>
#include <vector>

namespace oracle {

// P(first success at attempt n) for a geometric with success p.
inline double geom_pmf(double p, long n) { return p * std::pow(1.0 - p, n - 1); }

// Brute-force moments of the timing variables by direct summation.
//   X = (n - 1) T_R + T_o, n >= 1 geometric, unbounded.
//   Z = same, conditioned on n <= N.
struct Moments {
  double e_x = 0, e_x2 = 0, e_z = 0, e_z2 = 0, e_q = 0, e_l = 0;
};

inline Moments series_moments(double p, double tr, double to, int n_max) {
  Moments m;
  double tail = 1.0;
  for (long n = 1; tail > 1e-18 && n < 200000000; ++n) {
    const double w = geom_pmf(p, n);
    const double x = (n - 1) * tr + to;
    m.e_x += w * x;
    m.e_x2 += w * x * x;
    tail -= w;
  }
  double mass = 0.0;
  for (int n = 1; n <= n_max; ++n) mass += geom_pmf(p, n);
  for (int n = 1; n <= n_max; ++n) {
    const double w = geom_pmf(p, n) / mass;
    const double z = (n - 1) * tr + to;
    m.e_z += w * z;
    m.e_z2 += w * z * z;
  }
  // Inter-update gap L = N T_R - Z_prev + X', with X' counted from the next
  // sensing instant after the previous update; Q = area of the trapezoid
  // starting at height Z_prev over width L.
  m.e_l = n_max * tr - m.e_z + m.e_x;
  // E[Q] = E[Z_prev L + L^2 / 2] with Z_prev independent of X'.
  const double e_w = n_max * tr - m.e_z;  // W = N T_R - Z
  const double e_w2 = n_max * n_max * tr * tr - 2 * n_max * tr * m.e_z + m.e_z2;
  const double e_l2 = e_w2 + 2 * e_w * m.e_x + m.e_x2;
  const double e_zl = m.e_z * n_max * tr - m.e_z2 + m.e_z * m.e_x;
  m.e_q = e_zl + 0.5 * e_l2;
  return m;
}

// Sawtooth violation fraction of a deterministic schedule where every update
// resets to T_o and the next arrives N T_R later.
inline double sawtooth_violation(double v, double tr, double to, int n) {
  const double period = n * tr;
  const double peak = to + period;
  if (v <= to) return 1.0;
  if (v >= peak) return 0.0;
  return (peak - v) / period;
}

// Trapezoid-rule reference for Campbell's mean interference over an annulus.
inline double campbell_mean(double lambda, double power, double alpha, double r0, double r1) {
  const int steps = 200000;
  const double h = (r1 - r0) / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double r = r0 + i * h;
    const double f = r * std::pow(r, -alpha);
    acc += (i == 0 || i == steps) ? 0.5 * f : f;
  }
  return lambda * power * 2.0 * M_PI * acc * h;
}

// Energy per retransmission interval at success probability p, from the closed
// inverses P = -xi / ln p and P = (zeta / -ln p)^(alpha / 2).
inline double energy_noise(double p, int n, double xi, double to, double es) {
  return es / n - xi * to * (1 - std::pow(1 - p, n)) / (n * p * std::log(p));
}

inline double energy_intf(double p, int n, double zeta, double alpha, double to, double es) {
  return es / n + std::pow(zeta, alpha / 2) * to * (1 - std::pow(1 - p, n)) /
                      (n * p * std::pow(-std::log(p), alpha / 2));
}

}  // namespace oracle
