#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace pathperc {

/// The single PRNG family used throughout. Changing it changes every output,
/// so it is fixed at build time and named in run manifests.
using Rng = std::mt19937_64;
inline constexpr const char* kRngName = "mt19937_64";

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for replica `index` of a run seeded with `seed`. Injective in `index`
/// for a fixed seed: the golden-ratio increment is odd and the mixer is a
/// bijection.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

/// Uniform integer in [0, n). n must be positive.
/// Implemented here rather than with std::uniform_int_distribution so that
/// streams are identical across standard libraries.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // Lemire's multiply-shift with rejection of the biased low region.
  std::uint64_t x = rng();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = rng();
      m = static_cast<unsigned __int128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01(rng) < p;
}

}  // namespace pathperc
