#pragma once

#include <cstdint>
#include <vector>

#include "nott/fp.hpp"

namespace nott {

// C(a, b) mod p via the base-p digitwise product. C(a, b) = 0 for b > a.
FpScalar binom_mod_p(uint64_t a, uint64_t b, uint32_t p);

// Nonzero test without computing the digit binomials: C(a,b) != 0 mod p
// iff every base-p digit of a dominates the matching digit of b.
bool binom_nonzero_mod_p(uint64_t a, uint64_t b, uint32_t p);

// Number of maps f: {1..m} -> {1..n} with |f^-1(i)| = parts[i], mod p,
// as the telescoping product of binomials. Requires sum(parts) == m.
FpScalar count_labelled_partitions(uint64_t m, const std::vector<uint64_t>& parts,
                                   uint32_t p);

}  // namespace nott
