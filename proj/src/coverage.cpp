#include "aoicov/coverage.hpp"

#include <cmath>
#include <numbers>

#include "aoicov/error.hpp"

namespace aoicov {

void validate(const CorrelationParams& cp) {
  if (!(cp.u > 0.0)) throw ValidationError("corr_u must be > 0");
  if (!(cp.v > 0.0)) throw ValidationError("corr_v must be > 0");
  if (!(cp.theta_th > 0.0 && cp.theta_th < 1.0))
    throw ValidationError("theta_th must lie in (0, 1)");
  if (!(cp.eta > 0.0 && cp.eta <= 1.0)) throw ValidationError("eta must lie in (0, 1]");
  if (!(cp.eps_target > 0.0 && cp.eps_target < 1.0))
    throw ValidationError("eps_target must lie in (0, 1)");
}

namespace {

void require_separation(double l, double tau) {
  if (!(l >= 0.0)) throw DomainError("distance must be >= 0");
  if (!(tau >= 0.0)) throw DomainError("time difference must be >= 0");
}

}  // namespace

double correlation(double l, double tau, const CorrelationParams& cp) {
  require_separation(l, tau);
  return std::exp(-cp.u * l - cp.v * tau);
}

double estimation_error(double l, double tau, const CorrelationParams& cp) {
  require_separation(l, tau);
  return -std::expm1(-2.0 * cp.u * l - 2.0 * cp.v * tau);
}

double max_radius(const CorrelationParams& cp) {
  validate(cp);
  return -std::log1p(-cp.theta_th) / (2.0 * cp.u);
}

double max_coverage(const CorrelationParams& cp) {
  const double r = max_radius(cp);
  return std::numbers::pi * r * r;
}

double radius_at_age(double aoi, const CorrelationParams& cp) {
  if (!(aoi >= 0.0)) throw DomainError("aoi must be >= 0");
  const double r = max_radius(cp) - (cp.v / cp.u) * aoi;
  return r > 0.0 ? r : 0.0;
}

double eta_threshold(const CorrelationParams& cp) {
  validate(cp);
  if (cp.eta == 1.0) return 0.0;
  // 1 - sqrt(eta) written without the cancellation near eta = 1.
  const double shrink = (1.0 - cp.eta) / (1.0 + std::sqrt(cp.eta));
  return (cp.u / cp.v) * max_radius(cp) * shrink;
}

double eta_coverage_probability(const CorrelationParams& cp, double p_s,
                                const Timing& timing) {
  const double v_th = eta_threshold(cp);
  if (v_th <= 0.0) return 0.0;
  return 1.0 - violation_probability({v_th, p_s, timing});
}

}  // namespace aoicov
