#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace speccomm {

// splitmix64: whitens sequential seeds before they reach the main engine.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derived stream: decorrelates (seed, stream-tag) pairs.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(splitmix64(seed) + tag);
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

// Uniform double in [0, 1); hand-rolled so results do not depend on the
// standard library's distribution implementation.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& eng, double a, double b) {
  return a + (b - a) * uniform01(eng);
}

// Integer in [0, m) without modulo bias (m << 2^64 makes the bias
// negligible, but rejection is cheap and exact).
inline std::uint64_t uniform_index(std::mt19937_64& eng, std::uint64_t m) {
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % m;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % m;
}

// Box-Muller, first coordinate only; deterministic given the engine state.
inline double gaussian(std::mt19937_64& eng) {
  double u1;
  do {
    u1 = uniform01(eng);
  } while (u1 <= 0.0);
  const double u2 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

}  // namespace speccomm
