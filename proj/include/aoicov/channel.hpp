#pragma once

#include <string_view>
#include <vector>

#include "aoicov/timing.hpp"

namespace aoicov {

/// One class of co-channel interferers, placed as a homogeneous PPP.
struct InterfererClass {
  double density = 0.0;  // nodes per unit area, >= 0
  double power = 1.0;    // mW, > 0
};

/// Everything the success-probability formula and the simulator consume.
struct SystemParams {
  double tx_power = 1.0;        // P_t [mW]
  double link_distance = 20.0;  // d
  double pathloss_exp = 3.5;    // alpha, in (2, 6]
  double noise = 1e-5;          // N_o [mW]
  double target_sinr = 1.0;     // delta
  std::vector<InterfererClass> interferers;
  Timing timing;
};

enum class Environment { General, NoiseLimited, InterferenceLimited };

std::string_view to_string(Environment env);
Environment parse_environment(std::string_view text);

void validate(const SystemParams& params);

/// C1(alpha) = (2 pi / alpha) Gamma(2 / alpha) Gamma(1 - 2 / alpha).
/// Throws DomainError for alpha <= 2.
double c1_alpha(double alpha);

/// Noise term xi = N_o delta d^alpha of the success exponent.
double noise_coefficient(const SystemParams& params);

/// Interference term zeta = delta^(2/alpha) d^2 C1(alpha) sum_j lambda_j P_j^(2/alpha).
double interference_coefficient(const SystemParams& params);

/// Success probability of one transmission at power `tx_power`:
///   exp(-xi / P_t - zeta / P_t^(2/alpha)),
/// with the xi term dropped in the interference-limited environment and the
/// zeta term dropped in the noise-limited one.
double stp(const SystemParams& params, Environment env);
double stp_at(const SystemParams& params, Environment env, double tx_power);

/// Power (mW) achieving success probability p_s in (0, 1).
///
/// Closed form in the noise- and interference-limited environments; the
/// general environment bisects on ln P_t.
double stp_inverse(double p_s, const SystemParams& params, Environment env);

}  // namespace aoicov
