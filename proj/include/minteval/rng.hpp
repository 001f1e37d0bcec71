#pragma once

#include <cstddef>
#include <cstdint>

namespace minteval {

// splitmix64 step. Advances `state` and returns the mixed value.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed for substream `stream` of a root seed (tree index, system-pair index,
// Monte-Carlo trial, ...). Substream i depends only on (root, i), so growing
// the number of substreams never reshuffles earlier ones.
inline uint64_t derive_seed(uint64_t root, uint64_t stream) {
  uint64_t s = root + 0x9E3779B97F4A7C15ull * (stream + 1);
  return splitmix64(s);
}

// xoshiro256** generator. Hand-rolled so that sequences are fully specified
// by this header, independent of the standard library implementation.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
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

  // Uniform double in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform index in [0, n). Widening-multiply map; bias is < n / 2^64.
  size_t index(size_t n) {
    return static_cast<size_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Box-Muller normal sample; consumes exactly two uniforms per call.
  double normal(double mean = 0.0, double sd = 1.0);

 private:
  static uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  uint64_t s_[4];
};

}  // namespace minteval
