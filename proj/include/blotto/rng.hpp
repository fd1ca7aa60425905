#pragma once

#include <cstdint>

namespace blotto {

// Deterministic 64-bit generator (xoshiro256** seeded via splitmix64).
// One instance per run; fork() derives independent streams so seed layouts
// stay stable when components are added.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& word : s_) word = splitmix64(x);
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n); n >= 1.
  int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }

  Rng fork(uint64_t stream) {
    uint64_t x = next() ^ (stream * 0x9e3779b97f4a7c15ull);
    return Rng(splitmix64(x));
  }

 private:
  static uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  uint64_t s_[4];
};

}  // namespace blotto
