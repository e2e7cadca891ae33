#pragma once

#include <cmath>
#include <concepts>
#include <utility>

namespace aoicov {

/// (1 - p)^k for p in [0, 1], k >= 0, with 0^0 = 1.
///
/// Evaluated as exp(k * log1p(-p)) so small p with large k keeps full
/// precision.
inline double pow1m(double p, double k) {
  if (k == 0.0) return 1.0;
  if (p >= 1.0) return 0.0;
  return std::exp(k * std::log1p(-p));
}

/// 1 - (1 - p)^k, same conventions as pow1m.
inline double one_minus_pow1m(double p, double k) {
  if (k == 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  return -std::expm1(k * std::log1p(-p));
}

/// Bisection on a bracket [lo, hi] where pred(lo) is false and pred(hi) is
/// true for a monotone predicate. Returns the final bracket.
template <typename Pred, typename Stop>
  requires std::predicate<Pred, double> && std::predicate<Stop, double, double>
std::pair<double, double> bisect_predicate(Pred&& pred, double lo, double hi,
                                           Stop&& done,
                                           int max_iterations = 400) {
  for (int i = 0; i < max_iterations && !done(lo, hi); ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

/// Refines a sign change of f on [lo, hi] down to adjacent doubles.
template <typename F>
  requires std::invocable<F, double>
double bisect_root(F&& f, double lo, double hi) {
  const bool lo_negative = f(lo) < 0.0;
  auto [a, b] = bisect_predicate(
      [&](double x) { return (f(x) < 0.0) != lo_negative; }, lo, hi,
      [](double, double) { return false; });
  const double fa = std::abs(f(a));
  const double fb = std::abs(f(b));
  return fa <= fb ? a : b;
}

/// Golden-section minimization of a unimodal f on [lo, hi].
template <typename F>
  requires std::invocable<F, double>
double golden_section_min(F&& f, double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tolerance) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace aoicov
