#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace nvqaoa {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

/// Substream seed for a task addressed by `path` under `master`:
///   h = splitmix64(master); for each index i in path: h = splitmix64(h ^ splitmix64(i + 1))
/// Depends only on (master, path), never on scheduling order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = splitmix64(master);
  for (auto i : path) h = splitmix64(h ^ splitmix64(i + 1));
  return h;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline Rng make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  return Rng(derive_seed(master, path));
}

}  // namespace nvqaoa
