#pragma once

#include <cstdint>

namespace hoelderlab {

/// SplitMix64 finalizer. Used as a counter-based generator so that a random
/// quantity attached to a frequency k depends only on (seed, k), never on the
/// grid size or on evaluation order.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::int64_t a, std::int64_t b = 0, std::uint64_t stream = 0) {
  std::uint64_t h = mix64(seed ^ mix64(stream));
  h = mix64(h ^ static_cast<std::uint64_t>(a));
  return mix64(h ^ static_cast<std::uint64_t>(b) * 0xD6E8FEB86659FD93ULL);
}

/// Uniform double in [0, 1) from a 64-bit hash.
constexpr double unit_interval(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

}  // namespace hoelderlab
