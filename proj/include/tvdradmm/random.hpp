#pragma once

#include <cstdint>
#include <random>

namespace tvdradmm {

// All randomized components draw through these helpers instead of
// std::uniform_real_distribution, whose output is implementation-defined.
// A fixed seed therefore yields the same realization on every platform,
// which the byte-identical-output contract of the bench relies on.

inline double uniform01(std::mt19937_64& rng) {
  // 53 random mantissa bits -> uniform double in [0, 1)
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Standard normal via Box-Muller (rejection-free variant on (0,1] inputs).
inline double gauss(std::mt19937_64& rng) {
  double u1 = 1.0 - uniform01(rng);  // (0, 1]
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

}  // namespace tvdradmm
