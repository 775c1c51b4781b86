#pragma once

#include <cstdint>
#include <optional>

#include "nott/series.hpp"

namespace nott {

enum class CommutatorMethod { direct, recurrence };

struct CommutatorResult {
  GroupSeries value;
  // Smallest exponent above t with nonzero coefficient. Empty means the
  // result is t at this precision — undetermined beyond N, not a group
  // identity claim.
  std::optional<uint32_t> leading_exponent;
  FpScalar leading_coefficient;
  CommutatorMethod method;
};

// [v,u] = v o u o v^-1 o u^-1 by compositions and inversions.
CommutatorResult commutator_direct(const GroupSeries& v, const GroupSeries& u);

// [v,u] from the product identity v o u - u o v = sum_k a_k (u o v)^(k+1),
// solving for the a_k in ascending order against running powers of u o v.
// Coefficientwise equal to commutator_direct.
CommutatorResult commutator_recurrence(const GroupSeries& v, const GroupSeries& u);

enum class ExpansionSide { f, g };

struct ExpansionCoefficient {
  uint32_t s = 0;
  uint32_t k = 0;
  ExpansionSide side = ExpansionSide::f;
  FpScalar value;
};

// Expansion coefficients of the compositions of T-form elements
// u in T_i, v in T_j (i = j + e >= j):
//   f_{s,k} = coefficient of t^(q(s+e)+1) in v^(q(k+e)+1)
//   g_{s,k} = coefficient of t^(q(s+e)+1) in u^(qk+1)
// computed from the formal powers, not by enumerating compositions.
ExpansionCoefficient expansion_coefficient(const GroupSeries& u,
                                           const GroupSeries& v, uint32_t s,
                                           uint32_t k, ExpansionSide side,
                                           uint32_t q);

// compose(a, group_pow(b, m)) for the unique m in [1, p-1] cancelling the
// common leading coefficient; requires equal J depths. The result is strictly
// deeper or t at precision.
GroupSeries cancel_leading(const GroupSeries& a, const GroupSeries& b);

}  // namespace nott
