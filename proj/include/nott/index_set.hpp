#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "nott/series.hpp"

namespace nott {

// A decidable subset of the positive integers defining the index subgroup
// J(Lambda) = { t + sum_{lambda in Lambda} a_lambda t^(lambda+1) }.
// Membership queries are valid up to an explicit horizon; everything proved
// with an IndexSet is an "at horizon" statement.
class IndexSet {
public:
  enum class Kind { family_a, family_b, family_c, family_d, multiples, explicit_set, full };

  static constexpr uint32_t kDefaultHorizon = 1u << 20;

  static IndexSet family_a(uint32_t p, uint32_t d, uint32_t horizon = kDefaultHorizon);
  static IndexSet family_b(uint32_t p, uint32_t horizon = kDefaultHorizon);
  static IndexSet family_c(uint32_t p, uint32_t i, uint32_t horizon = kDefaultHorizon);
  static IndexSet family_d(uint32_t p, uint32_t horizon = kDefaultHorizon);
  static IndexSet multiples(uint32_t p, uint32_t q, uint32_t horizon = kDefaultHorizon);
  static IndexSet explicit_set(uint32_t p, std::set<uint32_t> elements,
                               uint32_t horizon = kDefaultHorizon);
  static IndexSet full(uint32_t p, uint32_t horizon = kDefaultHorizon);

  Kind kind() const { return kind_; }
  uint32_t prime() const { return p_; }
  uint32_t parameter() const { return param_; }
  uint32_t horizon() const { return horizon_; }
  std::string describe() const;

  // lambda in the set? Throws HorizonError for lambda > horizon.
  bool contains(uint32_t lambda) const;

  // Exponents lambda+1 <= N usable by elements of J(Lambda).
  std::vector<uint32_t> legal_exponents(uint32_t N) const;

private:
  IndexSet(Kind kind, uint32_t p, uint32_t param, uint32_t horizon)
      : kind_(kind), p_(p), param_(param), horizon_(horizon) {}

  Kind kind_;
  uint32_t p_;
  uint32_t param_ = 0;  // d for A, i for C, q for multiples
  uint32_t horizon_;
  std::set<uint32_t> elements_;
};

struct KlopschWitness {
  uint32_t lambda = 0, mu = 0, k = 0;
};

struct CriterionReport {
  bool passed = true;
  uint32_t horizon = 0;
  uint64_t triples_checked = 0;
  std::vector<KlopschWitness> witnesses;
};

// Exhaustive scan of the subgroup criterion: for all lambda, mu in Lambda
// with lambda + (lambda+1)*mu <= horizon and all k <= lambda+1, either
// C(lambda+1, k) = 0 mod p or lambda + k*mu in Lambda. Stops at the first
// witness unless all_witnesses is set.
CriterionReport klopsch_check(const IndexSet& lambda_set, uint32_t horizon,
                              bool all_witnesses = false);

// Every exponent of u above t must be lambda+1 for some lambda in the set.
bool member(const GroupSeries& u, const IndexSet& lambda_set);

struct ProbeViolation {
  int64_t trial = 0;  // -1 for the witness-guided deterministic pairs
  std::string operation;
  std::string detail;
};

struct ProbeReport {
  uint32_t trials = 0;
  uint32_t precision = 0;
  uint64_t seed = 0;
  std::vector<ProbeViolation> violations;
};

// Samples random pairs u, v in J(Lambda) at precision N and checks that
// compose(u, v) and invert(u) stay inside. When the criterion fails at a
// scan of horizon min(N, Lambda.horizon), the witness-generated pairs
// t + t^(lambda+1), t + t^(mu+1) are probed first (trial index -1).
ProbeReport closure_probe(const IndexSet& lambda_set, uint32_t trials,
                          uint32_t N, uint64_t seed);

enum class TorsionVerdict {
  identity,
  order_p_mod_precision,
  infinite_order_certified,
  undetermined,
};

std::string to_string(TorsionVerdict v);

struct OrderVerdict {
  TorsionVerdict verdict = TorsionVerdict::undetermined;
  // Leading exponents of u, u^p, u^(p^2), ... as far as the precision shows
  // them (certificate for the infinite-order trace, depth trace otherwise).
  std::vector<uint32_t> exponent_trace;
};

// Torsion classification at precision:
//  - identity: u = t
//  - infinite_order_certified: first exponent above t is = 1 mod p (the
//    p-th-power leading-term law applies; exact order is infinite)
//  - order_p_mod_precision: u^p = t mod t^(N+1), explicitly not a proof of
//    exact order p
//  - undetermined: everything else
OrderVerdict torsion_verdict(const GroupSeries& u);

}  // namespace nott
