#include <doctest.h>

#include "nott/fp.hpp"
#include "nott/prng.hpp"

using namespace nott;

TEST_CASE("is_prime over the supported range") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(65521));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4));
  CHECK_FALSE(is_prime(65535));
  CHECK_THROWS_AS(FpScalar(1, 6), ArgumentError);
  CHECK_THROWS_AS(FpScalar(1, 65536), ArgumentError);
}

TEST_CASE("power_of detects prime powers") {
  CHECK(power_of(3, 3) == 1);
  CHECK(power_of(9, 3) == 2);
  CHECK(power_of(27, 3) == 3);
  CHECK(power_of(8, 2) == 3);
  CHECK(power_of(6, 3) == 0);
  CHECK(power_of(1, 3) == 0);
  CHECK(power_of(12, 3) == 0);
}

TEST_CASE("FpScalar arithmetic is exact field arithmetic") {
  SplitMix64 rng(11);
  for (uint32_t p : {2u, 3u, 5u, 7u, 65521u}) {
    for (int t = 0; t < 200; ++t) {
      FpScalar a(rng.next(), p), b(rng.next(), p);
      CHECK((a + b).value() == (a.value() + b.value()) % p);
      CHECK((a - b).value() == (a.value() + p - b.value()) % p);
      CHECK((a * b).value() ==
            static_cast<uint64_t>(a.value()) * b.value() % p);
      CHECK((a + (-a)).is_zero());
      if (!a.is_zero()) {
        CHECK((a * a.inverse()).value() == 1);
        CHECK(a.pow(p - 1).value() == 1);  // Fermat
      }
    }
  }
}

TEST_CASE("FpScalar rejects mixed moduli") {
  FpScalar a(1, 3), b(1, 5);
  CHECK_THROWS_AS(a + b, IncompatibleError);
  CHECK_THROWS_AS(a * b, IncompatibleError);
}

TEST_CASE("FpScalar::from_signed normalizes negatives") {
  CHECK(FpScalar::from_signed(-1, 7).value() == 6);
  CHECK(FpScalar::from_signed(-14, 7).value() == 0);
  CHECK(FpScalar::from_signed(-10, 3).value() == 2);
}

TEST_CASE("digit expansion round-trips") {
  SplitMix64 rng(5);
  for (int t = 0; t < 500; ++t) {
    uint64_t n = rng.next() >> (rng.below(40));
    uint32_t base = 2 + static_cast<uint32_t>(rng.below(11));
    auto d = DigitExpansion::of(n, base);
    CHECK(d.value() == n);
    for (uint32_t digit : d.digits) CHECK(digit < base);
  }
  auto z = DigitExpansion::of(0, 3);
  REQUIRE(z.digits.size() == 1);
  CHECK(z.digits[0] == 0);
  CHECK(z.value() == 0);
}
