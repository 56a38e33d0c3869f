#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace submatch {

/// splitmix64 mixer. Used to derive independent seeds from a base seed
/// so that every trial of a sweep gets its own reproducible stream.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0) {
  return mix_seed(mix_seed(base) ^ mix_seed(a * 0x9e3779b97f4a7c15ULL + b));
}

/// Uniform double in [0, 1). Hand-rolled from the engine's raw bits:
/// the standard distributions are implementation-defined, and noisy
/// graphs must be bit-identical across platforms for a fixed seed.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). Rejection sampling keeps the draw exact
/// and portable. n must be positive.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
  std::uint64_t value = rng();
  while (value >= limit) value = rng();
  return value % n;
}

/// Random lowercase ASCII string of the given length.
inline std::string random_lowercase_string(std::mt19937_64& rng, std::size_t length,
                                           char first = 'a', char last = 'z') {
  const std::uint64_t span = static_cast<std::uint64_t>(last - first) + 1;
  std::string out(length, first);
  for (char& c : out) {
    c = static_cast<char>(first + uniform_index(rng, span));
  }
  return out;
}

}  // namespace submatch
