#pragma once

// Seeded random series builders shared by the probe, the lemma suite and the
// tests. All draws go through SplitMix64 so reports are reproducible.

#include <vector>

#include "nott/prng.hpp"
#include "nott/series.hpp"

namespace nott {

// Uniform independent coefficients at every exponent in [2, N].
inline GroupSeries random_group_series(uint32_t p, uint32_t N, SplitMix64& rng) {
  std::vector<uint32_t> c(N + 1, 0);
  c[1] = 1;
  for (uint32_t k = 2; k <= N; ++k)
    c[k] = static_cast<uint32_t>(rng.below(p));
  return GroupSeries(FormalSeries(p, std::move(c)));
}

// Element of T with first T-index exactly min_index (coefficient at
// t^(q*min_index+1) forced nonzero), uniform above.
inline GroupSeries random_t_element(uint32_t p, uint32_t q, uint32_t min_index,
                                    uint32_t N, SplitMix64& rng) {
  std::vector<uint32_t> c(N + 1, 0);
  c[1] = 1;
  for (uint32_t k = min_index; q * k + 1 <= N; ++k)
    c[q * k + 1] = static_cast<uint32_t>(rng.below(p));
  if (q * min_index + 1 <= N)
    c[q * min_index + 1] = 1 + static_cast<uint32_t>(rng.below(p - 1));
  return GroupSeries(FormalSeries(p, std::move(c)));
}

// Element of S with leading exponent exactly `lead` (must be pk or pk+1),
// uniform S-legal tail above.
inline GroupSeries random_s_element(uint32_t p, uint32_t lead, uint32_t N,
                                    SplitMix64& rng) {
  std::vector<uint32_t> c(N + 1, 0);
  c[1] = 1;
  for (uint32_t k = lead; k <= N; ++k)
    if (k % p <= 1) c[k] = static_cast<uint32_t>(rng.below(p));
  c[lead] = 1 + static_cast<uint32_t>(rng.below(p - 1));
  return GroupSeries(FormalSeries(p, std::move(c)));
}

}  // namespace nott
