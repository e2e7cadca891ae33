#pragma once

namespace aoicov {

/// Retransmission timing shared by the analysis and the simulator.
///
/// A sensing period lasts max_retx * retx_interval. Attempt n (1-based)
/// starts (n - 1) * retx_interval after the sensing instant and lasts
/// tx_duration.
struct Timing {
  double retx_interval = 1.0;  // T_R
  double tx_duration = 1.0;    // T_o, 0 < T_o <= T_R
  int max_retx = 10;           // N >= 1

  double sensing_period() const { return max_retx * retx_interval; }

  bool operator==(const Timing&) const = default;
};

/// Throws ValidationError if the timing invariants do not hold.
void validate(const Timing& timing);

}  // namespace aoicov
