#include <doctest.h>

#include "nott/sampling.hpp"
#include "nott/series.hpp"

using namespace nott;

namespace {

// Independent substitution oracle: sum_k u_k v^k by repeated naive products,
// no Horner, no shared kernel state.
GroupSeries naive_compose(const GroupSeries& u, const GroupSeries& v) {
  const uint32_t p = u.prime(), N = u.precision();
  FormalSeries acc(p, N);
  FormalSeries power = v.formal();
  for (uint32_t k = 1; k <= N; ++k) {
    if (u.coeff(k)) acc = add(acc, scale(power, u.coeff(k)));
    if (k < N) {
      // power = v^(k+1), naive quadratic product
      FormalSeries next(p, N);
      for (uint32_t i = 1; i <= N; ++i) {
        if (!power.coeff(i)) continue;
        for (uint32_t j = 1; i + j <= N; ++j) {
          if (!v.coeff(j)) continue;
          uint64_t add_val = static_cast<uint64_t>(power.coeff(i)) * v.coeff(j);
          next = add(next, FormalSeries::from_terms(
                               p, N, {{i + j, static_cast<uint32_t>(add_val % p)}}));
        }
      }
      power = next;
    }
  }
  return GroupSeries(acc);
}

}  // namespace

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(FormalSeries(4, 8), ArgumentError);
  CHECK_THROWS_AS(FormalSeries(3, 0), ArgumentError);
  CHECK_THROWS_AS(FormalSeries(3, std::vector<uint32_t>{1, 0, 0}), ArgumentError);
  CHECK_THROWS_AS(GroupSeries(FormalSeries(3, 8)), ArgumentError);
  CHECK_THROWS_AS(GroupSeries::from_terms(3, 8, {{1, 1}}), ArgumentError);
  // coefficients reduce mod p
  auto s = FormalSeries::from_terms(3, 4, {{2, 5}});
  CHECK(s.coeff(2) == 2);
}

TEST_CASE("add pinned examples") {
  auto a = FormalSeries::from_terms(3, 4, {{1, 1}, {3, 2}});
  auto b = FormalSeries::from_terms(3, 4, {{1, 1}, {3, 1}});
  auto sum = add(a, b);
  CHECK(sum == FormalSeries::from_terms(3, 4, {{1, 2}}));
  CHECK(add(a, FormalSeries(3, 4)) == a);
  CHECK(add(a, negate(a)).is_zero());
  CHECK_THROWS_AS(add(a, FormalSeries(3, 5)), IncompatibleError);
  CHECK_THROWS_AS(add(a, FormalSeries(5, 4)), IncompatibleError);
}

TEST_CASE("mul pinned examples") {
  auto t = FormalSeries::from_terms(2, 4, {{1, 1}});
  CHECK(mul(t, t) == FormalSeries::from_terms(2, 4, {{2, 1}}));
  auto u = FormalSeries::from_terms(2, 4, {{1, 1}, {2, 1}});
  CHECK(mul(u, u) == FormalSeries::from_terms(2, 4, {{2, 1}, {4, 1}}));
  CHECK(mul(u, FormalSeries(2, 4)).is_zero());
}

TEST_CASE("valuation additivity of mul") {
  SplitMix64 rng(21);
  for (uint32_t p : {2u, 3u, 7u}) {
    for (int trial = 0; trial < 50; ++trial) {
      uint32_t N = 24;
      uint32_t va = 1 + static_cast<uint32_t>(rng.below(6));
      uint32_t vb = 1 + static_cast<uint32_t>(rng.below(6));
      FormalSeries a(p, N), b(p, N);
      std::vector<uint32_t> ca(N + 1, 0), cb(N + 1, 0);
      for (uint32_t k = va; k <= N; ++k) ca[k] = static_cast<uint32_t>(rng.below(p));
      for (uint32_t k = vb; k <= N; ++k) cb[k] = static_cast<uint32_t>(rng.below(p));
      ca[va] = 1 + static_cast<uint32_t>(rng.below(p - 1));
      cb[vb] = 1 + static_cast<uint32_t>(rng.below(p - 1));
      a = FormalSeries(p, ca);
      b = FormalSeries(p, cb);
      if (va + vb <= N) CHECK(mul(a, b).valuation() == va + vb);
    }
  }
}

TEST_CASE("pow_formal agrees with repeated mul") {
  auto u = FormalSeries::from_terms(3, 9, {{1, 1}, {2, 1}});
  CHECK(pow_formal(u, 2) == mul(u, u));
  CHECK(pow_formal(u, 3) == mul(mul(u, u), u));
  CHECK(pow_formal(FormalSeries::from_terms(2, 8, {{1, 1}}), 5) ==
        FormalSeries::from_terms(2, 8, {{5, 1}}));
  CHECK_THROWS_AS(pow_formal(u, 0), ArgumentError);
}

TEST_CASE("compose pinned examples") {
  auto t = GroupSeries::identity(2, 4);
  auto u = GroupSeries::from_terms(2, 4, {{2, 1}});
  CHECK(compose(t, u) == u);
  CHECK(compose(u, t) == u);
  // (t+t^2) o (t+t^2) = t + t^4 mod 2
  CHECK(compose(u, u) == GroupSeries::from_terms(2, 4, {{4, 1}}));
}

TEST_CASE("compose matches the naive substitution oracle") {
  SplitMix64 rng(31);
  for (uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto u = random_group_series(p, 20, rng);
      auto v = random_group_series(p, 20, rng);
      CHECK(compose(u, v) == naive_compose(u, v));
    }
  }
}

TEST_CASE("invert pinned example and postcondition") {
  // w with w + w^2 = t term by term mod 2: w = t + t^2 + t^4
  auto u = GroupSeries::from_terms(2, 4, {{2, 1}});
  CHECK(invert(u) == GroupSeries::from_terms(2, 4, {{2, 1}, {4, 1}}));
  CHECK(invert(GroupSeries::identity(3, 8)) == GroupSeries::identity(3, 8));

  SplitMix64 rng(41);
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto g = random_group_series(p, 32, rng);
      auto w = invert(g);
      CHECK(compose(g, w) == GroupSeries::identity(p, 32));
      CHECK(compose(w, g) == GroupSeries::identity(p, 32));
    }
  }
}

TEST_CASE("group axioms at random triples") {
  SplitMix64 rng(51);
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 8; ++trial) {
      uint32_t N = 64;
      auto a = random_group_series(p, N, rng);
      auto b = random_group_series(p, N, rng);
      auto c = random_group_series(p, N, rng);
      CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
      CHECK(compose(a, GroupSeries::identity(p, N)) == a);
      CHECK(compose(GroupSeries::identity(p, N), a) == a);
    }
  }
  // one larger-precision associativity spot check
  auto a = random_group_series(3, 128, rng);
  auto b = random_group_series(3, 128, rng);
  auto c = random_group_series(3, 128, rng);
  CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
}

TEST_CASE("truncation consistency") {
  SplitMix64 rng(61);
  for (uint32_t p : {2u, 5u}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto a = random_group_series(p, 48, rng);
      auto b = random_group_series(p, 48, rng);
      uint32_t M = 16 + static_cast<uint32_t>(rng.below(16));
      CHECK(truncate(compose(a, b), M) == compose(truncate(a, M), truncate(b, M)));
      CHECK(truncate(invert(a), M) == invert(truncate(a, M)));
      CHECK(truncate(mul(a.formal(), b.formal()), M) ==
            mul(truncate(a.formal(), M), truncate(b.formal(), M)));
      CHECK(truncate(add(a.formal(), b.formal()), M) ==
            add(truncate(a.formal(), M), truncate(b.formal(), M)));
    }
  }
}

TEST_CASE("group_pow basics") {
  auto t = GroupSeries::identity(3, 16);
  CHECK(group_pow(t, 7) == t);
  SplitMix64 rng(71);
  auto g = random_group_series(3, 32, rng);
  CHECK(group_pow(g, 1) == g);
  CHECK(group_pow(g, 2) == compose(g, g));
  CHECK(group_pow(g, 5) == compose(compose(compose(compose(g, g), g), g), g));
  CHECK_THROWS_AS(group_pow(g, 0), ArgumentError);
}

TEST_CASE("depth examples") {
  auto t = GroupSeries::identity(3, 40);
  CHECK(depth(t, FiltrationKind::J).is_identity());
  CHECK(depth(t, FiltrationKind::T, 3).is_identity());
  CHECK(depth(t, FiltrationKind::S).is_identity());

  // depth(t + t^(q*3+1), T, q) = 3
  auto u = GroupSeries::from_terms(3, 40, {{10, 1}});
  CHECK(depth(u, FiltrationKind::T, 3).level == 3);
  CHECK(depth(u, FiltrationKind::J).level == 9);

  // depth(t + t^(2p), S) = 3 at p = 3
  auto v = GroupSeries::from_terms(3, 40, {{6, 1}});
  CHECK(depth(v, FiltrationKind::S).level == 3);
  // exponent np+1 -> even level 2n
  auto w = GroupSeries::from_terms(3, 40, {{7, 2}});
  CHECK(depth(w, FiltrationKind::S).level == 4);

  CHECK_THROWS_AS(depth(u, FiltrationKind::T, 4), ArgumentError);
  CHECK_THROWS_AS(depth(GroupSeries::from_terms(3, 40, {{3, 1}}), FiltrationKind::T, 3),
                  MembershipError);
  CHECK_THROWS_AS(depth(GroupSeries::from_terms(5, 40, {{3, 1}}), FiltrationKind::S),
                  MembershipError);
}

TEST_CASE("support examples") {
  auto t = GroupSeries::identity(3, 10);
  CHECK(support(t).exponents == std::vector<uint32_t>{1});
  auto s = FormalSeries::from_terms(3, 10, {{1, 1}, {4, 2}, {7, 1}});
  CHECK(support(s).exponents == std::vector<uint32_t>{1, 4, 7});
  CHECK(support(FormalSeries(3, 10)).exponents.empty());
}

TEST_CASE("T filtration p-th power law") {
  SplitMix64 rng(81);
  for (uint32_t p : {3u, 5u}) {
    for (uint32_t r = 1; r <= 2; ++r) {
      uint32_t q = 1;
      for (uint32_t t = 0; t < r; ++t) q *= p;
      for (int trial = 0; trial < 6; ++trial) {
        uint32_t i = 1 + static_cast<uint32_t>(rng.below(2));
        uint32_t N = q * p * i + q + 2;
        if (N > 400) continue;
        auto u = random_t_element(p, q, i, N, rng);
        REQUIRE(depth(u, FiltrationKind::T, q).level == i);
        auto up = group_pow(u, p);
        CHECK(depth(up, FiltrationKind::T, q).level == p * i);
      }
    }
  }
}

TEST_CASE("p-th power leading-term law for unit-class leads") {
  // u = t + a t^(pk+1) + arbitrary higher terms in J(F_p):
  // u^p = t + a t^(p(pk)+1) + ...
  SplitMix64 rng(91);
  for (uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 40; ++trial) {
      uint32_t k = 1 + static_cast<uint32_t>(rng.below(3));
      uint32_t N = p * p * k + p + 3;
      std::vector<uint32_t> c(N + 1, 0);
      c[1] = 1;
      for (uint32_t m = p * k + 1; m <= N; ++m)
        c[m] = static_cast<uint32_t>(rng.below(p));
      uint32_t a = 1 + static_cast<uint32_t>(rng.below(p - 1));
      c[p * k + 1] = a;
      auto u = GroupSeries(FormalSeries(p, c));
      auto up = group_pow(u, p);
      auto lead = up.leading_exponent();
      REQUIRE(lead.has_value());
      CHECK(*lead == p * (p * k) + 1);
      CHECK(up.coeff(*lead) == a);
    }
  }
}

TEST_CASE("S filtration parity of p-th powers") {
  SplitMix64 rng(101);
  for (uint32_t p : {3u, 5u}) {
    for (int trial = 0; trial < 100; ++trial) {
      uint32_t n = 1 + static_cast<uint32_t>(rng.below(2));
      bool odd_level = rng.below(2) == 0;
      uint32_t lead = odd_level ? n * p : n * p + 1;
      uint32_t N = p * p * n + 2 * p + 2;
      auto v = random_s_element(p, lead, N, rng);
      auto vp = group_pow(v, p);
      auto d = depth(vp, FiltrationKind::S);
      if (odd_level) {
        // S_{2n-1} -> S_{2np-1}
        if (d.level) CHECK(*d.level >= 2 * n * p - 1);
      } else {
        // S_{2n} -> S_{2np}, sharpened to exact level by the leading-term law
        REQUIRE(d.level.has_value());
        CHECK(*d.level == 2 * n * p);
      }
    }
  }
}
