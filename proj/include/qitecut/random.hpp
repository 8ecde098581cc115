#pragma once

#include <cstdint>
#include <random>

namespace qitecut {

// std:: distributions are implementation-defined; these helpers keep seeded
// streams identical across standard libraries.

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform_in(Rng& rng, double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); }

/// Uniform integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return x % bound;
}

/// Derives an independent seed for stream `index` of a base seed (splitmix64).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qitecut
