#pragma once
// Deterministic PRNG used for every randomized sweep in the library, tests
// and CLI.  The algorithm is pinned ("invperm-splitmix64-v1") so that a seed
// reproduces the same stream across builds, platforms and reimplementations:
//
//   state += 0x9E3779B97F4A7C15
//   z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//   z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31; output z
//
// uniform_below(n) draws 64-bit words and rejects those >= n * floor(2^64/n)
// (i.e. the usual unbiased-modulo rejection); shuffle() is Fisher-Yates from
// the back using uniform_below; uniform01() is (next() >> 11) * 2^-53.
// These derived procedures are part of the pinned contract.

#include <cstdint>
#include <vector>

namespace invperm {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform over {0, ..., n-1}, n >= 1
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = n * (~std::uint64_t{0} / n);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = std::size_t(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // permutation of {0..n-1}: identity then shuffled
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    shuffle(p);
    return p;
  }

 private:
  std::uint64_t state_;
};

}  // namespace invperm
