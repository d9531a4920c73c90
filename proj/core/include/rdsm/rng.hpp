#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

// Counter-based random number generation. Every variate is a pure function
// of (seed, path, step, lane), so path p at step t never depends on how many
// other paths or steps were generated before it. This is what makes ensembles
// bit-reproducible and safe to fill in any order.

namespace rdsm::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Absorbs the counter words one by one; each absorption is a full mix.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  return h;
}

// Uniform in (0, 1]; never returns 0 so it is safe under log().
inline double uniform01(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1p-53;
}

// Standard normal pair via Box-Muller from two counter lanes.
inline void normal_pair(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                        double& n0, double& n1) {
  const double u1 = uniform01(counter_hash(seed, a, b, 0));
  const double u2 = uniform01(counter_hash(seed, a, b, 1));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 6.283185307179586476925286766559 * u2;
  n0 = r * std::cos(phi);
  n1 = r * std::sin(phi);
}

// CN(0, sigma^2): real and imaginary parts independent N(0, sigma^2 / 2).
inline std::complex<double> complex_normal(std::uint64_t seed, std::uint64_t path,
                                           std::uint64_t step, double sigma) {
  if (sigma == 0.0) return {0.0, 0.0};
  double n0, n1;
  normal_pair(seed, path, step, n0, n1);
  const double s = sigma * 0.7071067811865475244008443621048;
  return {s * n0, s * n1};
}

// Real N(0, 1) at lane (path, step, component).
inline double standard_normal(std::uint64_t seed, std::uint64_t path,
                              std::uint64_t step, std::uint64_t component) {
  const double u1 = uniform01(counter_hash(seed, path, step, 2 * component + 2));
  const double u2 = uniform01(counter_hash(seed, path, step, 2 * component + 3));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.283185307179586476925286766559 * u2);
}

// Uniform integer in [0, n); used for seeded sampling without replacement.
inline std::uint64_t uniform_index(std::uint64_t seed, std::uint64_t counter,
                                   std::uint64_t n) {
  return counter_hash(seed, counter, 0x75c4ULL, 0) % n;
}

}  // namespace rdsm::rng
