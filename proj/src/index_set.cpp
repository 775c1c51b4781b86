#include "nott/index_set.hpp"

#include "nott/binomial.hpp"
#include "nott/prng.hpp"
#include "nott/sampling.hpp"

namespace nott {

IndexSet IndexSet::family_a(uint32_t p, uint32_t d, uint32_t horizon) {
  require_prime(p);
  if (d < 1) throw ArgumentError("family A needs d >= 1");
  return IndexSet(Kind::family_a, p, d, horizon);
}

IndexSet IndexSet::family_b(uint32_t p, uint32_t horizon) {
  require_prime(p);
  return IndexSet(Kind::family_b, p, 0, horizon);
}

IndexSet IndexSet::family_c(uint32_t p, uint32_t i, uint32_t horizon) {
  require_prime(p);
  if (i < 1) throw ArgumentError("family C needs i >= 1");
  return IndexSet(Kind::family_c, p, i, horizon);
}

IndexSet IndexSet::family_d(uint32_t p, uint32_t horizon) {
  require_prime(p);
  return IndexSet(Kind::family_d, p, 0, horizon);
}

IndexSet IndexSet::multiples(uint32_t p, uint32_t q, uint32_t horizon) {
  require_prime(p);
  if (q < 1) throw ArgumentError("multiples needs q >= 1");
  return IndexSet(Kind::multiples, p, q, horizon);
}

IndexSet IndexSet::explicit_set(uint32_t p, std::set<uint32_t> elements,
                                uint32_t horizon) {
  require_prime(p);
  for (uint32_t lambda : elements)
    if (lambda == 0) throw ArgumentError("index sets contain positive integers");
  IndexSet s(Kind::explicit_set, p, 0, horizon);
  s.elements_ = std::move(elements);
  return s;
}

IndexSet IndexSet::full(uint32_t p, uint32_t horizon) {
  require_prime(p);
  return IndexSet(Kind::full, p, 0, horizon);
}

std::string IndexSet::describe() const {
  switch (kind_) {
    case Kind::family_a: return "A(d=" + std::to_string(param_) + ")";
    case Kind::family_b: return "B";
    case Kind::family_c: return "C(i=" + std::to_string(param_) + ")";
    case Kind::family_d: return "D";
    case Kind::multiples: return "qN(q=" + std::to_string(param_) + ")";
    case Kind::explicit_set: {
      std::string out = "{";
      bool first = true;
      for (uint32_t x : elements_) {
        if (!first) out += ",";
        out += std::to_string(x);
        first = false;
      }
      return out + "}";
    }
    case Kind::full: return "N";
  }
  return "?";
}

bool IndexSet::contains(uint32_t lambda) const {
  if (lambda > horizon_)
    throw HorizonError("membership query " + std::to_string(lambda) +
                       " beyond horizon " + std::to_string(horizon_));
  if (lambda == 0) return false;
  switch (kind_) {
    case Kind::family_a: return lambda % param_ == 0;
    case Kind::family_b: {
      uint32_t r = lambda % p_;
      return r == 0 || r == p_ - 1;
    }
    case Kind::family_c: {
      uint64_t mod = 1;
      for (uint32_t t = 0; t < param_; ++t) mod *= p_;
      return (static_cast<uint64_t>(lambda) + 1) % mod == 0;
    }
    case Kind::family_d: {
      uint64_t v = static_cast<uint64_t>(lambda) + 1;  // p^i, i >= 1
      if (v < p_) return false;
      while (v % p_ == 0) v /= p_;
      return v == 1;
    }
    case Kind::multiples: return lambda % param_ == 0;
    case Kind::explicit_set: return elements_.count(lambda) > 0;
    case Kind::full: return true;
  }
  return false;
}

std::vector<uint32_t> IndexSet::legal_exponents(uint32_t N) const {
  if (N > horizon_ + 1)
    throw HorizonError("precision " + std::to_string(N) + " beyond horizon " +
                       std::to_string(horizon_));
  std::vector<uint32_t> out;
  for (uint32_t lambda = 1; lambda + 1 <= N; ++lambda)
    if (contains(lambda)) out.push_back(lambda + 1);
  return out;
}

CriterionReport klopsch_check(const IndexSet& lambda_set, uint32_t horizon,
                              bool all_witnesses) {
  if (horizon > lambda_set.horizon())
    throw HorizonError("scan horizon " + std::to_string(horizon) +
                       " beyond the set's horizon " +
                       std::to_string(lambda_set.horizon()));
  const uint32_t p = lambda_set.prime();
  CriterionReport report;
  report.horizon = horizon;
  // scan pairs with lambda + (lambda+1)*mu <= horizon so every lambda+k*mu
  // stays answerable
  for (uint32_t lambda = 1; lambda <= horizon; ++lambda) {
    if (!lambda_set.contains(lambda)) continue;
    for (uint32_t mu = 1;
         static_cast<uint64_t>(lambda) + static_cast<uint64_t>(lambda + 1) * mu <=
         horizon;
         ++mu) {
      if (!lambda_set.contains(mu)) continue;
      for (uint32_t k = 0; k <= lambda + 1; ++k) {
        ++report.triples_checked;
        if (!binom_nonzero_mod_p(lambda + 1, k, p)) continue;
        if (lambda_set.contains(lambda + k * mu)) continue;
        report.witnesses.push_back({lambda, mu, k});
        report.passed = false;
        if (!all_witnesses) return report;
      }
    }
  }
  return report;
}

bool member(const GroupSeries& u, const IndexSet& lambda_set) {
  if (u.precision() > lambda_set.horizon() + 1)
    throw HorizonError("series precision beyond the set's horizon");
  for (uint32_t k = 2; k <= u.precision(); ++k)
    if (u.coeff(k) && !lambda_set.contains(k - 1)) return false;
  return true;
}

namespace {

GroupSeries random_element(const IndexSet& lambda_set,
                           const std::vector<uint32_t>& exponents, uint32_t N,
                           SplitMix64& rng) {
  const uint32_t p = lambda_set.prime();
  std::vector<uint32_t> c(N + 1, 0);
  c[1] = 1;
  for (uint32_t e : exponents) c[e] = static_cast<uint32_t>(rng.below(p));
  return GroupSeries(FormalSeries(p, std::move(c)));
}

}  // namespace

ProbeReport closure_probe(const IndexSet& lambda_set, uint32_t trials,
                          uint32_t N, uint64_t seed) {
  const uint32_t p = lambda_set.prime();
  ProbeReport report;
  report.trials = trials;
  report.precision = N;
  report.seed = seed;

  auto check = [&](const GroupSeries& s, int64_t trial, const char* op) {
    if (member(s, lambda_set)) return;
    std::string detail = "support=";
    for (uint32_t k : support(s).exponents) detail += std::to_string(k) + " ";
    report.violations.push_back({trial, op, detail});
  };

  // Witness-guided deterministic pairs: failing sets are exhibited by
  // composing the single-term generators at the witness exponents.
  uint32_t scan = std::min(N, lambda_set.horizon());
  auto criterion = klopsch_check(lambda_set, scan, true);
  for (const auto& w : criterion.witnesses) {
    if (w.lambda + 1 > N || w.mu + 1 > N) continue;
    auto u = GroupSeries::from_terms(p, N, {{w.lambda + 1, 1}});
    auto v = GroupSeries::from_terms(p, N, {{w.mu + 1, 1}});
    check(compose(u, v), -1, "compose");
    check(compose(v, u), -1, "compose");
    check(invert(u), -1, "invert");
    check(invert(v), -1, "invert");
  }

  auto exponents = lambda_set.legal_exponents(N);
  SplitMix64 rng(seed);
  for (uint32_t trial = 0; trial < trials; ++trial) {
    auto u = random_element(lambda_set, exponents, N, rng);
    auto v = random_element(lambda_set, exponents, N, rng);
    check(compose(u, v), trial, "compose");
    check(invert(u), trial, "invert");
  }
  return report;
}

std::string to_string(TorsionVerdict v) {
  switch (v) {
    case TorsionVerdict::identity: return "IDENTITY";
    case TorsionVerdict::order_p_mod_precision: return "ORDER_P_MOD_PRECISION";
    case TorsionVerdict::infinite_order_certified:
      return "INFINITE_ORDER_CERTIFIED";
    case TorsionVerdict::undetermined: return "UNDETERMINED";
  }
  return "?";
}

OrderVerdict torsion_verdict(const GroupSeries& u) {
  const uint32_t p = u.prime();
  OrderVerdict out;
  auto lead = u.leading_exponent();
  if (!lead) {
    out.verdict = TorsionVerdict::identity;
    return out;
  }
  out.exponent_trace.push_back(*lead);
  if (*lead % p == 1) {
    // t + a t^(pk+1) + ...: infinite order; record the leading exponents of
    // the p-th power iterates while the precision still shows them
    out.verdict = TorsionVerdict::infinite_order_certified;
    GroupSeries w = u;
    uint32_t k = (*lead - 1) / p;
    while (static_cast<uint64_t>(p) * p * k + 1 <= u.precision()) {
      w = group_pow(w, p);
      auto l = w.leading_exponent();
      if (!l) break;
      out.exponent_trace.push_back(*l);
      k = (*l - 1) / p;
    }
    return out;
  }
  GroupSeries wp = group_pow(u, p);
  auto lp = wp.leading_exponent();
  if (!lp) {
    out.verdict = TorsionVerdict::order_p_mod_precision;
    return out;
  }
  out.exponent_trace.push_back(*lp);
  out.verdict = TorsionVerdict::undetermined;
  return out;
}

}  // namespace nott
