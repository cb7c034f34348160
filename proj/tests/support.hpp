#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ves/core.hpp"

namespace ves::test {

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// SplitMix64; deterministic draws for property sweeps.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t s_;
};

struct Pair {
  double gamma, mu;
};

// The 20 x 20 grid over [1.05, 2.95] x [0.05, 0.95].
inline std::vector<Pair> param_grid(int n = 20) {
  std::vector<Pair> g;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g.push_back({1.05 + 1.9 * i / (n - 1), 0.05 + 0.9 * j / (n - 1)});
    }
  }
  return g;
}

inline std::vector<Pair> random_pairs(std::uint64_t seed, int count) {
  Rng r(seed);
  std::vector<Pair> g;
  for (int k = 0; k < count; ++k) g.push_back({r.uniform(1.02, 2.98), r.uniform(0.02, 0.98)});
  return g;
}

}  // namespace ves::test
