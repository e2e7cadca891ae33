#include "aoicov/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "aoicov/error.hpp"
#include "aoicov/numeric.hpp"

namespace aoicov {

void validate(const Timing& timing) {
  if (!(timing.retx_interval > 0.0))
    throw ValidationError("retx_interval must be > 0");
  if (!(timing.tx_duration > 0.0))
    throw ValidationError("tx_duration must be > 0");
  if (timing.tx_duration > timing.retx_interval)
    throw ValidationError("tx_duration must not exceed retx_interval (T_o <= T_R)");
  if (timing.max_retx < 1) throw ValidationError("max_retx must satisfy N >= 1");
}

std::string_view to_string(Environment env) {
  switch (env) {
    case Environment::General:
      return "general";
    case Environment::NoiseLimited:
      return "noise_limited";
    case Environment::InterferenceLimited:
      return "interference_limited";
  }
  return "general";
}

Environment parse_environment(std::string_view text) {
  if (text == "general") return Environment::General;
  if (text == "noise_limited") return Environment::NoiseLimited;
  if (text == "interference_limited") return Environment::InterferenceLimited;
  throw ValidationError("unknown environment '" + std::string(text) +
                        "' (expected general, noise_limited or interference_limited)");
}

void validate(const SystemParams& params) {
  if (!(params.tx_power > 0.0)) throw ValidationError("tx_power must be > 0");
  if (!(params.link_distance > 0.0))
    throw ValidationError("link_distance must be > 0");
  if (!(params.pathloss_exp > 2.0 && params.pathloss_exp <= 6.0))
    throw ValidationError("pathloss_exp must lie in (2, 6]");
  if (!(params.noise >= 0.0)) throw ValidationError("noise must be >= 0");
  if (!(params.target_sinr > 0.0)) throw ValidationError("target_sinr must be > 0");
  for (const auto& c : params.interferers) {
    if (!(c.density >= 0.0)) throw ValidationError("interferer density must be >= 0");
    if (!(c.power > 0.0)) throw ValidationError("interferer power must be > 0");
  }
  validate(params.timing);
}

double c1_alpha(double alpha) {
  if (!(alpha > 2.0))
    throw DomainError("C1(alpha) requires alpha > 2 (Gamma(1 - 2/alpha) has a pole at 2)");
  const double a = 2.0 / alpha;
  return (2.0 * std::numbers::pi / alpha) * std::tgamma(a) * std::tgamma(1.0 - a);
}

double noise_coefficient(const SystemParams& params) {
  return params.noise * params.target_sinr *
         std::pow(params.link_distance, params.pathloss_exp);
}

double interference_coefficient(const SystemParams& params) {
  const double a = 2.0 / params.pathloss_exp;
  double field = 0.0;
  for (const auto& c : params.interferers) field += c.density * std::pow(c.power, a);
  if (field == 0.0) return 0.0;
  return std::pow(params.target_sinr, a) * params.link_distance * params.link_distance *
         c1_alpha(params.pathloss_exp) * field;
}

namespace {

double success_exponent(double xi, double zeta, double alpha, double tx_power,
                        Environment env) {
  double e = 0.0;
  if (env != Environment::InterferenceLimited) e += xi / tx_power;
  if (env != Environment::NoiseLimited) e += zeta / std::pow(tx_power, 2.0 / alpha);
  return e;
}

}  // namespace

double stp_at(const SystemParams& params, Environment env, double tx_power) {
  if (!(tx_power > 0.0)) throw ValidationError("tx_power must be > 0");
  return std::exp(-success_exponent(noise_coefficient(params),
                                    interference_coefficient(params),
                                    params.pathloss_exp, tx_power, env));
}

double stp(const SystemParams& params, Environment env) {
  validate(params);
  return stp_at(params, env, params.tx_power);
}

double stp_inverse(double p_s, const SystemParams& params, Environment env) {
  if (!(p_s > 0.0 && p_s < 1.0))
    throw DomainError("stp_inverse requires 0 < p_s < 1 (p_s = 1 needs infinite power)");
  const double xi = noise_coefficient(params);
  const double zeta = interference_coefficient(params);
  const double alpha = params.pathloss_exp;
  const double log_p = std::log(p_s);

  switch (env) {
    case Environment::NoiseLimited:
      if (!(xi > 0.0)) throw DomainError("noise-limited inversion needs noise > 0");
      return -xi / log_p;
    case Environment::InterferenceLimited:
      if (!(zeta > 0.0))
        throw DomainError("interference-limited inversion needs an interferer with density > 0");
      return std::pow(zeta / -log_p, alpha / 2.0);
    case Environment::General:
      break;
  }

  if (!(xi > 0.0 || zeta > 0.0))
    throw DomainError("success probability is 1 at any power without noise or interference");
  // The exponent is strictly decreasing in P_t, so bisect on ln P_t for
  // exponent(P) == -ln p_s.
  const double target = -log_p;
  auto exponent_at = [&](double log_power) {
    return success_exponent(xi, zeta, alpha, std::exp(log_power), env);
  };
  double lo = std::log(1e-9);
  double hi = std::log(1e9);
  while (exponent_at(lo) < target) lo -= (hi - lo);
  while (exponent_at(hi) > target) hi += (hi - lo);

  auto [a, b] = bisect_predicate(
      [&](double x) { return exponent_at(x) <= target; }, lo, hi,
      [&](double l, double h) {
        const double p_width = std::exp(-exponent_at(h)) - std::exp(-exponent_at(l));
        return p_width < 1e-10 && (h - l) < 1e-13 * std::max(1.0, std::abs(l));
      });
  return std::exp(0.5 * (a + b));
}

}  // namespace aoicov
