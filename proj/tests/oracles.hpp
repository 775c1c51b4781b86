#pragma once

// Independent oracles used by the test suites. Everything here is deliberately
// naive and kept apart from the library implementation paths it checks.

#include <cstdint>
#include <vector>

namespace oracle {

// Non-negative big integer, base 2^32 limbs, little-endian. Just enough
// arithmetic for exact factorials and binomials.
class BigNat {
public:
  BigNat() = default;
  explicit BigNat(uint64_t v) {
    while (v) {
      limbs_.push_back(static_cast<uint32_t>(v));
      v >>= 32;
    }
  }

  void mul_small(uint32_t m) {
    uint64_t carry = 0;
    for (auto& limb : limbs_) {
      uint64_t cur = static_cast<uint64_t>(limb) * m + carry;
      limb = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    while (carry) {
      limbs_.push_back(static_cast<uint32_t>(carry));
      carry >>= 32;
    }
  }

  // exact division by a small divisor (caller guarantees divisibility)
  void div_small(uint32_t d) {
    uint64_t rem = 0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
      uint64_t cur = (rem << 32) | *it;
      *it = static_cast<uint32_t>(cur / d);
      rem = cur % d;
    }
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  uint32_t mod_small(uint32_t m) const {
    uint64_t rem = 0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it)
      rem = ((rem << 32) | *it) % m;
    return static_cast<uint32_t>(rem);
  }

private:
  std::vector<uint32_t> limbs_;
};

// C(a, b) as an exact big integer: a! divided stepwise by b! and (a-b)!.
// Every intermediate division is exact.
inline BigNat big_binomial(uint32_t a, uint32_t b) {
  if (b > a) return BigNat(0);
  BigNat f(1);
  for (uint32_t k = 2; k <= a; ++k) f.mul_small(k);
  for (uint32_t k = 2; k <= b; ++k) f.div_small(k);
  for (uint32_t k = 2; k <= a - b; ++k) f.div_small(k);
  return f;
}

// Brute-force count of maps f: {1..m} -> {1..n} with |f^-1(i)| = parts[i],
// by recursive assignment with remaining-capacity bookkeeping. Counts fit in
// uint64 easily for m <= 12.
inline uint64_t count_maps(uint32_t m, const std::vector<uint32_t>& parts) {
  std::vector<uint32_t> remaining = parts;
  uint64_t count = 0;
  auto rec = [&](auto&& self, uint32_t next) -> void {
    if (next == m) {
      ++count;
      return;
    }
    for (auto& r : remaining) {
      if (r == 0) continue;
      --r;
      self(self, next + 1);
      ++r;
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace oracle
