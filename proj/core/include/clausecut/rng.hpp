#pragma once

#include <cstdint>

namespace clausecut {

// splitmix64 (Vigna, public domain). Used instead of <random> engines where
// the byte-for-byte output stream is part of a documented, reproducible
// scheme ("objective sampler v1" in the harness): identical seeds give
// identical streams on every platform.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, range) by rejection; unbiased and reproducible.
  uint64_t bounded(uint64_t range) {
    if (range <= 1) return 0;
    uint64_t reject_below = (0 - range) % range;  // 2^64 mod range
    for (;;) {
      uint64_t v = next();
      if (v >= reject_below) return v % range;
    }
  }

  // Uniform integer in [lo, hi].
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    bounded(static_cast<uint64_t>(hi - lo) + 1));
  }

  bool chance_one_in(uint64_t n) { return bounded(n) == 0; }
};

// Stable 64-bit string hash (FNV-1a); used to derive per-instance seeds.
inline uint64_t fnv1a64(const char* data, uint64_t len) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (uint64_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace clausecut
