#include <doctest.h>

#include "nott/binomial.hpp"
#include "oracles.hpp"

using namespace nott;

TEST_CASE("binom_mod_p pinned values") {
  CHECK(binom_mod_p(5, 0, 3).value() == 1);
  // a = p, 0 < k < p: low base-p digit of p is 0, so the digit test fails
  for (uint32_t p : {3u, 5u, 7u})
    for (uint32_t k = 1; k < p; ++k) CHECK(binom_mod_p(p, k, p).is_zero());
  // C(7,2) = 21 = 0 mod 3; digits 7=(1,2)_3, 2=(2,0)_3, low digit 1 < 2
  CHECK(binom_mod_p(7, 2, 3).is_zero());
  CHECK(binom_mod_p(2, 7, 3).is_zero());  // b > a
  CHECK_THROWS_AS(binom_mod_p(4, 2, 4), ArgumentError);
}

TEST_CASE("binom_mod_p matches exact big-integer factorial reduction") {
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    for (uint32_t a = 0; a <= 300; ++a) {
      // one exact big-integer row per a, reused across b
      oracle::BigNat row = oracle::BigNat(1);
      for (uint32_t b = 0; b <= a; ++b) {
        if (b > 0) {
          // C(a,b) = C(a,b-1) * (a-b+1) / b, exact at every step
          row.mul_small(a - b + 1);
          row.div_small(b);
        }
        CHECK(binom_mod_p(a, b, p).value() == row.mod_small(p));
      }
    }
  }
}

TEST_CASE("Lucas digit-domination predicate (exhaustive to 300)") {
  for (uint32_t p : {2u, 3u, 5u}) {
    for (uint32_t a = 0; a <= 300; ++a) {
      for (uint32_t b = 0; b <= a; ++b) {
        bool nonzero = !binom_mod_p(a, b, p).is_zero();
        auto da = DigitExpansion::of(a, p), db = DigitExpansion::of(b, p);
        bool dominates = true;
        for (size_t i = 0; i < db.digits.size(); ++i) {
          uint32_t ad = i < da.digits.size() ? da.digits[i] : 0;
          if (ad < db.digits[i]) dominates = false;
        }
        CHECK(nonzero == dominates);
        CHECK(nonzero == binom_nonzero_mod_p(a, b, p));
      }
    }
  }
}

TEST_CASE("count_labelled_partitions pinned values") {
  CHECK(count_labelled_partitions(5, {5}, 3).value() == 1);  // n = 1
  CHECK(count_labelled_partitions(3, {1, 1, 1}, 5).value() == 1);  // 3! = 6
  CHECK(count_labelled_partitions(4, {2, 2}, 3).is_zero());        // 6 mod 3
  CHECK_THROWS_AS(count_labelled_partitions(4, {2, 3}, 3), ArgumentError);
  CHECK_THROWS_AS(count_labelled_partitions(4, {}, 3), ArgumentError);
}

TEST_CASE("count_labelled_partitions equals brute-force map enumeration") {
  // all compositions of m for m <= 8, checked against direct map counting
  for (uint32_t m = 1; m <= 8; ++m) {
    std::vector<std::vector<uint32_t>> compositions;
    std::vector<uint32_t> cur;
    auto rec = [&](auto&& self, uint32_t left) -> void {
      if (left == 0) {
        compositions.push_back(cur);
        return;
      }
      for (uint32_t part = 1; part <= left; ++part) {
        cur.push_back(part);
        self(self, left - part);
        cur.pop_back();
      }
    };
    rec(rec, m);
    for (const auto& parts : compositions) {
      uint64_t exact = oracle::count_maps(m, parts);
      std::vector<uint64_t> parts64(parts.begin(), parts.end());
      for (uint32_t p : {2u, 3u, 5u})
        CHECK(count_labelled_partitions(m, parts64, p).value() == exact % p);
    }
  }
}

TEST_CASE("two-part symmetry") {
  for (uint32_t p : {2u, 3u, 5u, 7u})
    for (uint64_t l1 = 1; l1 <= 9; ++l1)
      for (uint64_t l2 = 1; l2 <= 9; ++l2)
        CHECK(count_labelled_partitions(l1 + l2, {l1, l2}, p).value() ==
              count_labelled_partitions(l1 + l2, {l2, l1}, p).value());
}
