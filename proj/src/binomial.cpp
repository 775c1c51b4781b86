#include "nott/binomial.hpp"

#include <algorithm>

namespace nott {

namespace {

// C(n, k) mod p for n, k < p, by the multiplicative formula. k! is invertible
// because k < p.
uint32_t small_binom(uint32_t n, uint32_t k, uint32_t p) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  uint64_t num = 1, den = 1;
  for (uint32_t t = 0; t < k; ++t) {
    num = num * ((n - t) % p) % p;
    den = den * ((t + 1) % p) % p;
  }
  return static_cast<uint32_t>((num * FpScalar(den, p).inverse().value()) % p);
}

}  // namespace

FpScalar binom_mod_p(uint64_t a, uint64_t b, uint32_t p) {
  require_prime(p);
  if (b > a) return FpScalar(0, p);
  uint64_t acc = 1;
  while (b > 0 || a > 0) {
    uint32_t ad = static_cast<uint32_t>(a % p);
    uint32_t bd = static_cast<uint32_t>(b % p);
    if (bd > ad) return FpScalar(0, p);
    acc = acc * small_binom(ad, bd, p) % p;
    a /= p;
    b /= p;
  }
  return FpScalar(acc, p);
}

bool binom_nonzero_mod_p(uint64_t a, uint64_t b, uint32_t p) {
  require_prime(p);
  if (b > a) return false;
  while (b > 0) {
    if (b % p > a % p) return false;
    a /= p;
    b /= p;
  }
  return true;
}

FpScalar count_labelled_partitions(uint64_t m, const std::vector<uint64_t>& parts,
                                   uint32_t p) {
  require_prime(p);
  if (parts.empty()) throw ArgumentError("labelled partition needs n >= 1 parts");
  uint64_t total = 0;
  for (uint64_t l : parts) {
    if (l == 0) throw ArgumentError("labelled partition parts must be positive");
    total += l;
  }
  if (total != m)
    throw ArgumentError("labelled partition parts sum to " +
                        std::to_string(total) + ", expected " + std::to_string(m));
  FpScalar acc(1, p);
  uint64_t remaining = m;
  for (uint64_t l : parts) {
    acc = acc * binom_mod_p(remaining, l, p);
    remaining -= l;
  }
  return acc;
}

}  // namespace nott
