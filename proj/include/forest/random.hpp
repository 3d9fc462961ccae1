#pragma once

#include <cstdint>
#include <random>

namespace forest {

using Rng = std::mt19937_64;

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Sub-seed for an object with a stable id under a given stage tag.
inline std::uint64_t sub_seed(std::uint64_t root, std::uint64_t stage, std::uint64_t id) {
  return mix64(mix64(root ^ mix64(stage)) ^ id);
}

inline std::uint64_t below(Rng& rng, std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

// Uniform draw that depends only on (seed, stage, id).
inline std::uint64_t keyed_below(std::uint64_t root, std::uint64_t stage, std::uint64_t id,
                                 std::uint64_t n) {
  return sub_seed(root, stage, id) % n;
}

}  // namespace forest
