#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nott/commutator.hpp"
#include "nott/index_set.hpp"
#include "nott/series.hpp"

namespace nott {

// Shared knobs for the verification battery. Each check uses the fields its
// hypotheses call for and ignores the rest.
struct LemmaCheckConfig {
  uint32_t p = 3;
  uint32_t q = 3;       // p^r
  uint32_t trials = 100;
  uint64_t seed = 7;

  // expansion-coefficient windows (Props 3.2/3.3)
  uint32_t j_max = 4;
  uint32_t e_max = 3;

  // leading-term scans
  uint32_t i_max = 6;

  // exhaustive combinatorial check bounds
  uint32_t l41_j_lo = 9;
  uint32_t l41_j_hi = 12;
  uint32_t l41_i_hi = 15;
  uint32_t l41_s = 1;
  uint64_t instance_cap = 10'000'000;

  // commutator-shape check bounds (j >= q^2 forced by the hypothesis)
  uint32_t l42_j_lo = 9;
  uint32_t l42_j_hi = 12;
  uint32_t l42_i_hi = 15;
};

struct CheckInstance {
  std::string params;
  bool passed = true;
  std::string witness;  // counterexample payload, empty on pass
};

struct CheckReport {
  std::string lemma;
  bool passed = true;
  uint64_t instances = 0;  // draws or enumerated instances behind the rows
  std::vector<CheckInstance> rows;

  void add(const std::string& params, bool ok, const std::string& witness = "");
};

// Lemma 2.1 (labelled-preimage counts) against brute-force map enumeration
// and Lemma 2.2 (Lucas digit criterion) against exact binomial rows.
CheckReport verify_lemma_21(const LemmaCheckConfig& cfg);
CheckReport verify_lemma_22(const LemmaCheckConfig& cfg);

// Props 3.2/3.3: expansion coefficients against the closed forms over the
// three stated s-windows, boundary terms included.
CheckReport verify_prop_32_33(const LemmaCheckConfig& cfg);

// Prop 3.4: leading term -i u_{qi+1} v_{qj+1} at t^(q(qj+i)+1), the p | i
// refinement, and the i = j vanishing.
CheckReport verify_prop_34(const LemmaCheckConfig& cfg);

// Lemma 4.1: exhaustive enumeration of admissible tuple systems; every
// admissible instance must hit I = p^s i and match the structure dichotomy.
CheckReport verify_lemma_41(const LemmaCheckConfig& cfg);

// Lemma 4.2: commutator shape for the sparse-window v and single-term u.
CheckReport verify_lemma_42(const LemmaCheckConfig& cfg);

// 5.x battery: leading terms, unit-class debuts and p-th power laws.
CheckReport verify_lemma_51(const LemmaCheckConfig& cfg);
CheckReport verify_lemma_52(const LemmaCheckConfig& cfg);
CheckReport verify_lemma_53(const LemmaCheckConfig& cfg);
CheckReport verify_theorem_55(const LemmaCheckConfig& cfg);
std::vector<CheckReport> verify_section5(const LemmaCheckConfig& cfg);

// --- Lemma 4.1 instance machinery (exposed for the independent slow
// enumerator in the tests) -------------------------------------------------

struct Lemma41Tuple {
  uint32_t i_m = 0, j_m = 0;
  uint32_t v = 0, w = 0, x = 0, y = 0, z = 0;

  friend bool operator==(const Lemma41Tuple&, const Lemma41Tuple&) = default;
  friend auto operator<=>(const Lemma41Tuple&, const Lemma41Tuple&) = default;
};

struct Lemma41Params {
  uint32_t p, q, s, i, j;
};

// Side conditions (1)-(4) plus coupling and divisibility rules for one tuple.
bool lemma41_tuple_admissible(const Lemma41Tuple& t, const Lemma41Params& prm);

// Contribution v i_m + w q j_m + x j_m + y q i_m p^{n(j_m)} + z.
uint64_t lemma41_contribution(const Lemma41Tuple& t, const Lemma41Params& prm);

// --- constructive machinery -------------------------------------------------

struct PromoteStep {
  char source = 'V';            // 'P' = p-th power commutator, 'V' = v commutator
  uint32_t partner_exponent = 0;  // pi+1 of the single-term partner
  uint32_t partner_coefficient = 0;
  uint32_t lead_after = 0;  // leading exponent of the running element
};

struct PromoteResult {
  bool success = false;
  GroupSeries value;
  std::vector<PromoteStep> trace;
  std::string failure;
};

// Strips the leading zero-class levels of v by composing commutators of v
// (and of v^p) with single-term partners until the leading exponent is
// = 1 mod p; such an element has certified infinite order. Requires odd p
// and v in S, nontrivial. Elements with a unit-class lead return unchanged.
PromoteResult promote_to_unit_class(const GroupSeries& v, uint32_t budget);

struct ClosureCaps {
  uint32_t max_elements = 6000;
  uint32_t bfs_elements = 250;  // breadth-first phase size
};

struct ClosureReport {
  uint32_t precision = 0;
  uint32_t p = 0;
  uint64_t seed = 0;
  std::string generator;          // support dump
  std::vector<uint32_t> depths;   // realized J-depths, ascending
  uint32_t element_count = 0;
  bool capped = false;
  // tail coverage: every S-legal depth in [tail_start, tail_end] realized;
  // tail_start = 0 when even tail_end is missing
  uint32_t tail_start = 0;
  uint32_t tail_end = 0;
};

// Breadth-first closure of {generator} under conjugation by elements of
// U = S_{u_level}, composition and inversion, mod t^(N+1), followed by the
// systematic commutator depth ladders. Deterministic for a
// fixed seed; caps only stop the expansion early, so depth sets grow with
// the caps.
ClosureReport closure_explore(const GroupSeries& generator, uint32_t u_level,
                              const ClosureCaps& caps, uint64_t seed);

}  // namespace nott
