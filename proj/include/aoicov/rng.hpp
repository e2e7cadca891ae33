#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace aoicov {

/// SplitMix64 finalizer; derives independent stream seeds from a master seed
/// and a stream index so results do not depend on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using Engine = std::mt19937_64;

/// Uniform on [0, 1) from the top 53 bits.
inline double uniform01(Engine& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Unit-mean exponential (Rayleigh power fading).
inline double exponential1(Engine& rng) { return -std::log1p(-uniform01(rng)); }

}  // namespace aoicov
