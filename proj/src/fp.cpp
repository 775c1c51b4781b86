#include "nott/fp.hpp"

namespace nott {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint32_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

void require_prime(uint32_t p) {
  if (p >= kMaxPrime)
    throw ArgumentError("modulus " + std::to_string(p) +
                        " exceeds the supported range (p < 2^16)");
  if (!is_prime(p))
    throw ArgumentError("modulus " + std::to_string(p) + " is not prime");
}

uint32_t power_of(uint32_t q, uint32_t p) {
  if (p < 2 || q < p) return 0;
  uint32_t r = 0;
  uint64_t acc = 1;
  while (acc < q) {
    acc *= p;
    ++r;
  }
  return acc == q ? r : 0;
}

FpScalar FpScalar::inverse() const {
  if (v_ == 0) throw ArgumentError("inverse of zero mod " + std::to_string(p_));
  // extended Euclid on (v, p)
  int64_t a = v_, b = p_, x = 1, u = 0;
  while (a != 0) {
    int64_t q = b / a;
    b -= q * a;
    std::swap(a, b);
    u -= q * x;
    std::swap(x, u);
  }
  int64_t inv = u % static_cast<int64_t>(p_);
  if (inv < 0) inv += p_;
  return FpScalar(static_cast<uint64_t>(inv), p_);
}

FpScalar FpScalar::pow(uint64_t e) const {
  uint64_t base = v_, result = 1;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return FpScalar(result, p_);
}

DigitExpansion DigitExpansion::of(uint64_t n, uint32_t base) {
  if (base < 2) throw ArgumentError("digit expansion needs base >= 2");
  DigitExpansion d;
  d.base = base;
  if (n == 0) d.digits.push_back(0);
  while (n > 0) {
    d.digits.push_back(static_cast<uint32_t>(n % base));
    n /= base;
  }
  return d;
}

uint64_t DigitExpansion::value() const {
  uint64_t v = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it)
    v = v * base + *it;
  return v;
}

}  // namespace nott
