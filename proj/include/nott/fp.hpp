#pragma once

#include <cstdint>
#include <vector>

#include "nott/errors.hpp"

namespace nott {

// Supported modulus range: p < 2^16 keeps every scalar product inside a
// 64-bit accumulator even after summing thousands of terms.
inline constexpr uint32_t kMaxPrime = 1u << 16;

bool is_prime(uint32_t n);

// Throws ArgumentError unless p is a prime below kMaxPrime.
void require_prime(uint32_t p);

// Returns r >= 1 with q = p^r, or 0 when q is not a positive power of p.
uint32_t power_of(uint32_t q, uint32_t p);

// Residue class modulo a prime p.
class FpScalar {
public:
  FpScalar(uint64_t value, uint32_t p) : p_(p) {
    require_prime(p);
    v_ = static_cast<uint32_t>(value % p);
  }

  static FpScalar from_signed(int64_t value, uint32_t p) {
    require_prime(p);
    int64_t r = value % static_cast<int64_t>(p);
    if (r < 0) r += p;
    return FpScalar(static_cast<uint64_t>(r), p);
  }

  uint32_t value() const { return v_; }
  uint32_t prime() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  FpScalar operator-() const { return FpScalar(v_ == 0 ? 0 : p_ - v_, p_); }

  FpScalar inverse() const;
  FpScalar pow(uint64_t e) const;

  friend FpScalar operator+(const FpScalar& a, const FpScalar& b) {
    check_same(a, b);
    uint32_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return FpScalar(s, a.p_);
  }
  friend FpScalar operator-(const FpScalar& a, const FpScalar& b) {
    check_same(a, b);
    uint32_t s = a.v_ + a.p_ - b.v_;
    if (s >= a.p_) s -= a.p_;
    return FpScalar(s, a.p_);
  }
  friend FpScalar operator*(const FpScalar& a, const FpScalar& b) {
    check_same(a, b);
    return FpScalar(static_cast<uint64_t>(a.v_) * b.v_ % a.p_, a.p_);
  }
  friend bool operator==(const FpScalar& a, const FpScalar& b) {
    return a.p_ == b.p_ && a.v_ == b.v_;
  }

private:
  static void check_same(const FpScalar& a, const FpScalar& b) {
    if (a.p_ != b.p_)
      throw IncompatibleError("FpScalar moduli differ: " +
                              std::to_string(a.p_) + " vs " +
                              std::to_string(b.p_));
  }

  uint32_t v_;
  uint32_t p_;
};

// Base-p digits, least significant first.
struct DigitExpansion {
  uint32_t base = 2;
  std::vector<uint32_t> digits;

  static DigitExpansion of(uint64_t n, uint32_t base);
  uint64_t value() const;
};

}  // namespace nott
