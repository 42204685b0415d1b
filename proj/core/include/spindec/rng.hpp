#pragma once

#include <complex>
#include <cstdint>
#include <random>

// Deterministic random-number plumbing. Every stochastic quantity in the
// library is a pure function of a 64-bit seed: std::mt19937_64 has a
// standard-pinned output sequence, and the Gaussian transform below is
// spelled out explicitly because std::normal_distribution's algorithm is
// implementation-defined.

namespace spindec {

// SplitMix64-style avalanche mix; fans a master seed out to per-stream seeds
// so stream k is stable when the stream count grows.
inline std::uint64_t hash_seed(std::uint64_t master, std::uint64_t k) {
  std::uint64_t x = master + 0x9E3779B97F4A7C15ull * (k + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

// Uniform on (0, 1]; never returns 0, so log() is safe.
inline double uniform_open(std::mt19937_64& gen) {
  return static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
}

// One standard complex Gaussian, E|g|^2 = 1: Box-Muller pair scaled by 1/sqrt(2).
inline std::complex<double> complex_gaussian(std::mt19937_64& gen) {
  const double u1 = uniform_open(gen);
  const double u2 = uniform_open(gen);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  // r/sqrt(2) * (cos, sin)
  const double s = r * 0.7071067811865475244;
  return {s * std::cos(theta), s * std::sin(theta)};
}

}  // namespace spindec
