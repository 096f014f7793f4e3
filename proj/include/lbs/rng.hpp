#pragma once

#include <cstdint>
#include <random>

namespace lbs::rng {

// All randomized operations take an explicit 64-bit seed and draw from a
// std::mt19937_64 engine (whose output sequence is fixed by the standard).
// Distribution helpers below are hand-rolled so that results are identical
// across standard library implementations.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 engine(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

// Counter-based substream derivation: trial j of master seed s is seeded
// with splitmix64(splitmix64(s) + (j+1) * golden), so any trial can be
// reproduced in isolation from (seed, trial).
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t s = splitmix64(seed) + (trial + 1) * 0x9E3779B97F4A7C15ULL;
  return std::mt19937_64(splitmix64(s));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n), n >= 1. Rejection-free is not needed at desk
// scale, but keep the draw unbiased anyway.
inline int uniform_int(std::mt19937_64& g, int n) {
  std::uint64_t bound = static_cast<std::uint64_t>(n);
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return static_cast<int>(x % bound);
}

}  // namespace lbs::rng
