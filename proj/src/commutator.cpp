#include "nott/commutator.hpp"

#include <cassert>

namespace nott {

namespace {

CommutatorResult finish(GroupSeries value, CommutatorMethod method) {
  auto lead = value.leading_exponent();
  FpScalar coeff =
      lead ? value.coeff_scalar(*lead) : FpScalar(0, value.prime());
  return CommutatorResult{std::move(value), lead, coeff, method};
}

}  // namespace

CommutatorResult commutator_direct(const GroupSeries& v, const GroupSeries& u) {
  // v o u o v^-1 o u^-1 = (v o u) o (u o v)^-1
  GroupSeries vu = compose(v, u);
  GroupSeries uv = compose(u, v);
  return finish(compose(vu, invert(uv)), CommutatorMethod::direct);
}

CommutatorResult commutator_recurrence(const GroupSeries& v,
                                       const GroupSeries& u) {
  const uint32_t p = u.prime();
  const uint32_t N = u.precision();
  const FormalSeries W = compose(u, v).formal();
  FormalSeries L = sub(compose(v, u).formal(), W);

  // W^(k+1) has valuation k+1 with leading coefficient 1, so the residual's
  // coefficient at t^(k+1) is a_k once all lower a's are subtracted. Every
  // a_k below the valuation of L is zero by construction; assert, don't
  // assume.
  std::vector<uint32_t> residual = L.coeffs();
  std::vector<uint32_t> a(N + 1, 0);  // a[k] multiplies t^(k+1)
  const uint32_t lv = L.valuation();
  for (uint32_t m = 2; m < lv && m <= N; ++m) assert(residual[m] == 0);

  FormalSeries power = mul(W, W);  // W^(k+1), starting at k = 1
  for (uint32_t k = 1; k + 1 <= N; ++k) {
    uint32_t ak = residual[k + 1];
    if (ak) {
      a[k] = ak;
      const auto& pw = power.coeffs();
      for (uint32_t m = k + 1; m <= N; ++m) {
        uint64_t r = residual[m] + static_cast<uint64_t>(p - ak) * pw[m];
        residual[m] = static_cast<uint32_t>(r % p);
      }
    }
    if (k + 2 <= N) power = mul(power, W);
  }

  std::vector<uint32_t> c(N + 1, 0);
  c[1] = 1;
  for (uint32_t k = 1; k + 1 <= N; ++k) c[k + 1] = a[k];
  return finish(GroupSeries(FormalSeries(p, std::move(c))),
                CommutatorMethod::recurrence);
}

ExpansionCoefficient expansion_coefficient(const GroupSeries& u,
                                           const GroupSeries& v, uint32_t s,
                                           uint32_t k, ExpansionSide side,
                                           uint32_t q) {
  const uint32_t p = u.prime();
  if (power_of(q, p) == 0)
    throw ArgumentError("expansion coefficients need q a positive power of p");
  Depth dv = depth(v, FiltrationKind::T, q);  // validates T-form
  Depth du = depth(u, FiltrationKind::T, q);
  if (dv.is_identity() && du.is_identity())
    throw ArgumentError("expansion coefficients need a nontrivial T element");
  // a trivial side contributes no terms of its own; read it at the other
  // side's level (e = 0)
  const uint32_t j = dv.level ? *dv.level : *du.level;
  const uint32_t i = du.level ? *du.level : j;
  if (i < j)
    throw ArgumentError("expansion coefficients assume depth(u) >= depth(v)");
  const uint32_t e = i - j;

  const uint64_t target = static_cast<uint64_t>(q) * (s + e) + 1;
  if (target > u.precision())
    throw PrecisionError("target exponent " + std::to_string(target) +
                         " exceeds precision " + std::to_string(u.precision()));
  const uint64_t exponent = side == ExpansionSide::f
                                ? static_cast<uint64_t>(q) * (k + e) + 1
                                : static_cast<uint64_t>(q) * k + 1;
  const FormalSeries& base =
      side == ExpansionSide::f ? v.formal() : u.formal();
  FormalSeries pw = pow_formal(base, exponent);
  return ExpansionCoefficient{s, k, side,
                              pw.coeff_scalar(static_cast<uint32_t>(target))};
}

GroupSeries cancel_leading(const GroupSeries& a, const GroupSeries& b) {
  auto la = a.leading_exponent();
  auto lb = b.leading_exponent();
  if (!la || !lb) throw ArgumentError("cancel_leading needs nontrivial inputs");
  if (*la != *lb)
    throw ArgumentError("cancel_leading needs equal depths, got exponents " +
                        std::to_string(*la) + " and " + std::to_string(*lb));
  // Leading coefficients add under composition at the shallowest level, and
  // b^m carries m times b's leading coefficient for m < p; alpha != 0 makes
  // m = -alpha/beta land in [1, p-1].
  FpScalar alpha = a.coeff_scalar(*la);
  FpScalar beta = b.coeff_scalar(*lb);
  uint32_t m = ((-alpha) * beta.inverse()).value();
  return compose(a, group_pow(b, m));
}

}  // namespace nott
