#pragma once

#include <cstdint>
#include <random>

namespace majdyn {

/// Deterministic helpers on top of mt19937_64. The standard distribution
/// classes are implementation-defined, so seeded runs would not reproduce
/// across standard libraries; these do.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). Modulo bias is irrelevant at the n used here.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

/// Uniform in [lo, hi).
inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace majdyn
