#pragma once

#include <cmath>

namespace aoicov {

// Power is carried in linear milliwatts everywhere; dBm appears only at the
// CLI boundary.
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

}  // namespace aoicov
