#include "nott/series.hpp"

#include <algorithm>
#include <cassert>

namespace nott {

namespace {

using Coeffs = std::vector<uint32_t>;

void check_compatible(const FormalSeries& a, const FormalSeries& b) {
  if (a.prime() != b.prime())
    throw IncompatibleError("series moduli differ: " + std::to_string(a.prime()) +
                            " vs " + std::to_string(b.prime()));
  if (a.precision() != b.precision())
    throw IncompatibleError("series precisions differ: " +
                            std::to_string(a.precision()) + " vs " +
                            std::to_string(b.precision()));
}

size_t count_nonzero(const Coeffs& a) {
  size_t n = 0;
  for (uint32_t c : a) n += (c != 0);
  return n;
}

// out = a * b truncated at the shared precision. At least one factor has a
// zero constant slot, so out[0] stays zero. The factor with fewer nonzero
// entries runs on the outside; products accumulate unreduced in 64 bits
// (p < 2^16 keeps N+1 summands well inside the accumulator).
void mul_raw(Coeffs& out, const Coeffs& a, const Coeffs& b, uint32_t p) {
  const size_t n = a.size();
  static thread_local std::vector<uint64_t> acc;
  acc.assign(n, 0);
  const Coeffs* outer = &a;
  const Coeffs* inner = &b;
  if (count_nonzero(b) < count_nonzero(a)) std::swap(outer, inner);
  const uint32_t* in = inner->data();
  for (size_t i = 0; i < n; ++i) {
    const uint64_t ai = (*outer)[i];
    if (!ai) continue;
    uint64_t* slot = acc.data() + i;
    const size_t jmax = n - i;
    for (size_t j = 0; j < jmax; ++j) slot[j] += ai * in[j];
  }
  out.resize(n);
  for (size_t k = 0; k < n; ++k) out[k] = static_cast<uint32_t>(acc[k] % p);
}

// sum_{k>=1} a_k g^k for a with zero constant slot and g of valuation 1,
// folded Horner-style from a's top nonzero index down. Exact mod t^(N+1)
// because g has valuation 1.
Coeffs substitute_raw(const Coeffs& a, const Coeffs& g, uint32_t p) {
  const size_t n = a.size();
  size_t top = 0;
  for (size_t k = n; k-- > 1;)
    if (a[k]) {
      top = k;
      break;
    }
  Coeffs r(n, 0);
  if (top == 0) return r;
  Coeffs tmp(n, 0);
  r[0] = a[top];
  for (size_t k = top; k-- > 1;) {
    mul_raw(tmp, r, g, p);
    std::swap(r, tmp);
    r[0] = a[k];
  }
  mul_raw(tmp, r, g, p);
  std::swap(r, tmp);
  return r;
}

}  // namespace

FormalSeries::FormalSeries(uint32_t p, uint32_t precision) : p_(p) {
  require_prime(p);
  if (precision < 1) throw ArgumentError("precision must be >= 1");
  c_.assign(precision + 1, 0);
}

FormalSeries::FormalSeries(uint32_t p, std::vector<uint32_t> coeffs)
    : p_(p), c_(std::move(coeffs)) {
  require_prime(p);
  if (c_.size() < 2) throw ArgumentError("precision must be >= 1");
  if (c_[0] != 0) throw ArgumentError("formal series carry no constant term");
  for (auto& c : c_) c %= p_;
}

FormalSeries FormalSeries::from_terms(
    uint32_t p, uint32_t precision,
    const std::vector<std::pair<uint32_t, uint32_t>>& terms) {
  FormalSeries s(p, precision);
  for (auto [k, c] : terms) {
    if (k < 1 || k > precision)
      throw ArgumentError("term exponent " + std::to_string(k) +
                          " outside [1, " + std::to_string(precision) + "]");
    s.c_[k] = (s.c_[k] + c) % p;
  }
  return s;
}

bool FormalSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](uint32_t c) { return c == 0; });
}

uint32_t FormalSeries::valuation() const {
  for (uint32_t k = 1; k < c_.size(); ++k)
    if (c_[k]) return k;
  return precision() + 1;
}

GroupSeries::GroupSeries(FormalSeries s) : s_(std::move(s)) {
  if (s_.coeff(1) != 1)
    throw ArgumentError("group series need t-coefficient 1");
}

GroupSeries GroupSeries::identity(uint32_t p, uint32_t precision) {
  return GroupSeries(FormalSeries::from_terms(p, precision, {{1, 1}}));
}

GroupSeries GroupSeries::from_terms(
    uint32_t p, uint32_t precision,
    const std::vector<std::pair<uint32_t, uint32_t>>& terms) {
  for (auto [k, c] : terms) {
    (void)c;
    if (k < 2)
      throw ArgumentError("group series terms need exponent >= 2");
  }
  auto all = terms;
  all.emplace_back(1, 1);
  return GroupSeries(FormalSeries::from_terms(p, precision, all));
}

bool GroupSeries::is_identity() const { return !leading_exponent().has_value(); }

std::optional<uint32_t> GroupSeries::leading_exponent() const {
  for (uint32_t k = 2; k <= precision(); ++k)
    if (coeff(k)) return k;
  return std::nullopt;
}

FormalSeries add(const FormalSeries& a, const FormalSeries& b) {
  check_compatible(a, b);
  const uint32_t p = a.prime();
  std::vector<uint32_t> c = a.coeffs();
  for (size_t k = 0; k < c.size(); ++k) {
    c[k] += b.coeffs()[k];
    if (c[k] >= p) c[k] -= p;
  }
  return FormalSeries(p, std::move(c));
}

FormalSeries sub(const FormalSeries& a, const FormalSeries& b) {
  return add(a, negate(b));
}

FormalSeries negate(const FormalSeries& a) {
  const uint32_t p = a.prime();
  std::vector<uint32_t> c = a.coeffs();
  for (auto& x : c) x = x ? p - x : 0;
  return FormalSeries(p, std::move(c));
}

FormalSeries scale(const FormalSeries& a, uint32_t c) {
  const uint32_t p = a.prime();
  c %= p;
  std::vector<uint32_t> out = a.coeffs();
  for (auto& x : out) x = static_cast<uint32_t>(static_cast<uint64_t>(x) * c % p);
  return FormalSeries(p, std::move(out));
}

FormalSeries mul(const FormalSeries& a, const FormalSeries& b) {
  check_compatible(a, b);
  std::vector<uint32_t> out;
  mul_raw(out, a.coeffs(), b.coeffs(), a.prime());
  return FormalSeries(a.prime(), std::move(out));
}

FormalSeries pow_formal(const FormalSeries& a, uint64_t e) {
  if (e == 0)
    throw ArgumentError("pow_formal needs e >= 1 (constant 1 not representable)");
  FormalSeries base = a;
  std::optional<FormalSeries> result;
  while (e) {
    if (e & 1) result = result ? mul(*result, base) : base;
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return *result;
}

FormalSeries truncate(const FormalSeries& a, uint32_t precision) {
  if (precision < 1 || precision > a.precision())
    throw PrecisionError("cannot truncate precision " +
                         std::to_string(a.precision()) + " to " +
                         std::to_string(precision));
  std::vector<uint32_t> c(a.coeffs().begin(), a.coeffs().begin() + precision + 1);
  return FormalSeries(a.prime(), std::move(c));
}

GroupSeries truncate(const GroupSeries& a, uint32_t precision) {
  return GroupSeries(truncate(a.formal(), precision));
}

GroupSeries compose(const GroupSeries& u, const GroupSeries& v) {
  check_compatible(u.formal(), v.formal());
  Coeffs out = substitute_raw(u.formal().coeffs(), v.formal().coeffs(), u.prime());
  return GroupSeries(FormalSeries(u.prime(), std::move(out)));
}

FormalSeries substitute(const FormalSeries& a, const GroupSeries& v) {
  check_compatible(a, v.formal());
  Coeffs out = substitute_raw(a.coeffs(), v.formal().coeffs(), a.prime());
  return FormalSeries(a.prime(), std::move(out));
}

GroupSeries invert(const GroupSeries& u) {
  const uint32_t p = u.prime();
  const uint32_t N = u.precision();
  const Coeffs& g = u.formal().coeffs();
  // Solve w(u(t)) = t coefficient by coefficient against running powers of
  // u: u^k has valuation k with leading coefficient 1, so w_k is determined
  // once w_1 .. w_{k-1} are fixed.
  Coeffs P = g;          // u^k
  Coeffs A = g;          // sum of w_m u^m so far (w_1 = 1)
  Coeffs w(N + 1, 0), tmp;
  w[1] = 1;
  for (uint32_t k = 2; k <= N; ++k) {
    mul_raw(tmp, P, g, p);
    std::swap(P, tmp);
    uint32_t wk = A[k] ? p - A[k] : 0;
    if (wk) {
      w[k] = wk;
      for (uint32_t m = k; m <= N; ++m)
        A[m] = static_cast<uint32_t>((A[m] + static_cast<uint64_t>(wk) * P[m]) % p);
    }
  }
  return GroupSeries(FormalSeries(p, std::move(w)));
}

GroupSeries group_pow(const GroupSeries& u, uint64_t e) {
  if (e == 0) throw ArgumentError("group_pow needs e >= 1");
  GroupSeries base = u;
  std::optional<GroupSeries> result;
  while (e) {
    if (e & 1) result = result ? compose(*result, base) : base;
    e >>= 1;
    if (e) base = compose(base, base);
  }
  return *result;
}

Depth depth(const GroupSeries& u, FiltrationKind kind, uint32_t q) {
  const uint32_t p = u.prime();
  Depth d;
  d.kind = kind;
  auto lead = u.leading_exponent();

  switch (kind) {
    case FiltrationKind::J:
      if (lead) d.level = *lead - 1;
      return d;

    case FiltrationKind::T: {
      if (power_of(q, p) == 0)
        throw ArgumentError("T filtration needs q a positive power of p");
      d.q = q;
      for (uint32_t k = 2; k <= u.precision(); ++k)
        if (u.coeff(k) && (k - 1) % q != 0)
          throw MembershipError("exponent " + std::to_string(k) +
                                " outside the T legal set {qk+1}");
      if (lead) d.level = (*lead - 1) / q;
      return d;
    }

    case FiltrationKind::S: {
      for (uint32_t k = 2; k <= u.precision(); ++k)
        if (u.coeff(k) && k % p > 1)
          throw MembershipError("exponent " + std::to_string(k) +
                                " outside the S legal set {pk, pk+1}");
      if (lead) {
        uint32_t m = *lead;
        d.level = (m % p == 0) ? 2 * (m / p) - 1 : 2 * (m / p);
      }
      return d;
    }
  }
  throw ArgumentError("unknown filtration kind");
}

Support support(const FormalSeries& a) {
  Support s;
  for (uint32_t k = 1; k <= a.precision(); ++k)
    if (a.coeff(k)) s.exponents.push_back(k);
  return s;
}

Support support(const GroupSeries& a) { return support(a.formal()); }

}  // namespace nott
