#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace crowdweight {

// Seed-stream derivation. Every randomized component owns an engine derived
// from (user seed, stream indices), so results do not depend on scheduling
// when work is split across threads.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = seed;
  std::uint64_t x = splitmix64(s);
  s ^= a + 0x1000003ULL;
  x ^= splitmix64(s);
  s ^= b + 0x9e3779b9ULL;
  x ^= splitmix64(s);
  return x;
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
  return std::mt19937_64(derive_seed(seed, a, b));
}

/// Uniform double in [0, 1) from the top 53 bits; identical across platforms.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& eng, double p) {
  return uniform01(eng) < p;
}

/// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % n;
}

/// Fisher-Yates permutation of {0..m-1}.
inline std::vector<int> shuffled_indices(int m, std::mt19937_64& eng) {
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  for (int i = m - 1; i > 0; --i) {
    const int j = static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(i) + 1));
    std::swap(idx[i], idx[j]);
  }
  return idx;
}

}  // namespace crowdweight
