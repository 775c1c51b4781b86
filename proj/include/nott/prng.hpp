#pragma once

#include <cstdint>

namespace nott {

// splitmix64: fixed algorithm so seeded runs are byte-identical across
// platforms and releases.
class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n); n >= 1
  uint64_t below(uint64_t n) { return next() % n; }

  // uniform in [lo, hi]
  uint64_t between(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

private:
  uint64_t state_;
};

}  // namespace nott
