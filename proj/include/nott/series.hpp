#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nott/fp.hpp"

namespace nott {

// Dense truncated power series over F_p with zero constant term, exact
// modulo t^(N+1). Coefficients live in coeffs()[1..N]; slot 0 is kept and
// always zero so indices read as exponents.
class FormalSeries {
public:
  FormalSeries(uint32_t p, uint32_t precision);
  FormalSeries(uint32_t p, std::vector<uint32_t> coeffs);  // coeffs[0] must be 0

  static FormalSeries from_terms(
      uint32_t p, uint32_t precision,
      const std::vector<std::pair<uint32_t, uint32_t>>& terms);

  uint32_t prime() const { return p_; }
  uint32_t precision() const { return static_cast<uint32_t>(c_.size()) - 1; }

  uint32_t coeff(uint32_t k) const { return k < c_.size() ? c_[k] : 0; }
  FpScalar coeff_scalar(uint32_t k) const { return FpScalar(coeff(k), p_); }
  const std::vector<uint32_t>& coeffs() const { return c_; }

  bool is_zero() const;
  // Smallest exponent with nonzero coefficient; N+1 for the zero series.
  uint32_t valuation() const;

  friend bool operator==(const FormalSeries& a, const FormalSeries& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

private:
  uint32_t p_;
  std::vector<uint32_t> c_;
};

// Element of the group J modulo precision: a FormalSeries with t-coefficient 1.
class GroupSeries {
public:
  explicit GroupSeries(FormalSeries s);

  static GroupSeries identity(uint32_t p, uint32_t precision);
  // Terms with exponent >= 2; the leading t is implicit.
  static GroupSeries from_terms(
      uint32_t p, uint32_t precision,
      const std::vector<std::pair<uint32_t, uint32_t>>& terms);

  uint32_t prime() const { return s_.prime(); }
  uint32_t precision() const { return s_.precision(); }
  uint32_t coeff(uint32_t k) const { return s_.coeff(k); }
  FpScalar coeff_scalar(uint32_t k) const { return s_.coeff_scalar(k); }
  const FormalSeries& formal() const { return s_; }

  bool is_identity() const;
  // Smallest exponent >= 2 with nonzero coefficient; nullopt when the
  // element is t at this precision.
  std::optional<uint32_t> leading_exponent() const;

  friend bool operator==(const GroupSeries& a, const GroupSeries& b) {
    return a.s_ == b.s_;
  }

private:
  FormalSeries s_;
};

enum class FiltrationKind { J, T, S };

// Filtration level of the first permitted nonzero coefficient. level is
// empty for the identity (no finite depth claimed at this precision).
struct Depth {
  FiltrationKind kind = FiltrationKind::J;
  std::optional<uint32_t> level;
  uint32_t q = 0;  // set for kind T

  bool is_identity() const { return !level.has_value(); }
};

struct Support {
  std::vector<uint32_t> exponents;  // ascending, nonzero coefficients only
};

// --- ring operations -------------------------------------------------------

FormalSeries add(const FormalSeries& a, const FormalSeries& b);
FormalSeries sub(const FormalSeries& a, const FormalSeries& b);
FormalSeries negate(const FormalSeries& a);
FormalSeries scale(const FormalSeries& a, uint32_t c);

// Cauchy product truncated to t^N.
FormalSeries mul(const FormalSeries& a, const FormalSeries& b);

// e-fold product by binary exponentiation; e >= 1 (the constant 1 has no
// representation here).
FormalSeries pow_formal(const FormalSeries& a, uint64_t e);

// Truncate to a lower precision.
FormalSeries truncate(const FormalSeries& a, uint32_t precision);
GroupSeries truncate(const GroupSeries& a, uint32_t precision);

// --- group operations ------------------------------------------------------

// Substitution u(v(t)), the group operation of J.
GroupSeries compose(const GroupSeries& u, const GroupSeries& v);

// Substitution of a group element into a formal series: sum_k a_k v(t)^k.
FormalSeries substitute(const FormalSeries& a, const GroupSeries& v);

// Compositional inverse: the unique w with w(u(t)) = u(w(t)) = t mod t^(N+1).
GroupSeries invert(const GroupSeries& u);

// e-fold composition, e >= 1.
GroupSeries group_pow(const GroupSeries& u, uint64_t e);

// --- filtration queries ----------------------------------------------------

// J depth: first nonzero coefficient above t sits at t^(level+1).
// T depth (q = p^r): membership in T_i requires support inside {qk+1};
//   throws MembershipError otherwise.
// S depth: legal exponents {pk, pk+1}; exponent np -> level 2n-1,
//   exponent np+1 -> level 2n.
Depth depth(const GroupSeries& u, FiltrationKind kind, uint32_t q = 0);

Support support(const FormalSeries& a);
Support support(const GroupSeries& a);

}  // namespace nott
