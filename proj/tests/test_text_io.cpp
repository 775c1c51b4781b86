#include <doctest.h>

#include "nott/sampling.hpp"
#include "nott/series_text.hpp"

using namespace nott;

TEST_CASE("parse pinned examples") {
  CHECK(parse_group_series("t", 3, 10) == GroupSeries::identity(3, 10));
  CHECK(parse_group_series("t + 2*t^4 + t^7", 3, 10) ==
        GroupSeries::from_terms(3, 10, {{4, 2}, {7, 1}}));
  // coefficient reduces to zero; canonical reprint is "t"
  auto reduced = parse_group_series("t + 3*t^4", 3, 10);
  CHECK(reduced == GroupSeries::identity(3, 10));
  CHECK(print_series(reduced) == "t");
  // negative signs normalize into [1, p-1]
  CHECK(parse_group_series("t - t^4", 3, 10) ==
        GroupSeries::from_terms(3, 10, {{4, 2}}));
  // formal series
  CHECK(parse_formal_series("2*t^2", 3, 8) ==
        FormalSeries::from_terms(3, 8, {{2, 2}}));
  CHECK(parse_formal_series("0", 5, 8).is_zero());
  CHECK(parse_formal_series("t^1 + t^3", 2, 8) ==
        FormalSeries::from_terms(2, 8, {{1, 1}, {3, 1}}));
}

TEST_CASE("parse errors carry positions and the right class") {
  CHECK_THROWS_AS(parse_group_series("x", 3, 8), ParseError);
  CHECK_THROWS_AS(parse_group_series("t + + t^4", 3, 8), ParseError);
  CHECK_THROWS_AS(parse_group_series("t + t^0", 3, 8), ParseError);
  CHECK_THROWS_AS(parse_group_series("t + t^1", 3, 8), ParseError);
  CHECK_THROWS_AS(parse_group_series("t + 2t^4", 3, 8), ParseError);
  CHECK_THROWS_AS(parse_group_series("t^4", 3, 8), ParseError);
  CHECK_THROWS_AS(parse_formal_series("", 3, 8), ParseError);
  // exponents beyond precision: rejected unless truncation is requested
  CHECK_THROWS_AS(parse_group_series("t + t^9", 3, 8), PrecisionError);
  CHECK(parse_group_series("t + t^9", 3, 8, true) ==
        GroupSeries::identity(3, 8));
  CHECK_THROWS_AS(parse_group_series("t + t^4", 6, 8), ArgumentError);
}

TEST_CASE("print canonical forms") {
  CHECK(print_series(GroupSeries::identity(3, 8)) == "t");
  CHECK(print_series(GroupSeries::from_terms(3, 20, {{16, 1}})) == "t + t^16");
  CHECK(print_series(FormalSeries::from_terms(3, 8, {{2, 2}})) == "2*t^2");
  CHECK(print_series(FormalSeries(3, 8)) == "0");
}

TEST_CASE("round-trip: parse(print(s)) = s on random series") {
  SplitMix64 rng(123);
  for (uint32_t p : {2u, 3u, 7u}) {
    for (int trial = 0; trial < 200; ++trial) {
      uint32_t N = 2 + static_cast<uint32_t>(rng.below(40));
      auto g = random_group_series(p, N, rng);
      CHECK(parse_group_series(print_series(g), p, N) == g);
      CHECK(group_series_from_json(to_json(g)) == g);
      std::vector<uint32_t> c(N + 1, 0);
      for (uint32_t k = 1; k <= N; ++k)
        c[k] = static_cast<uint32_t>(rng.below(p));
      FormalSeries f(p, c);
      CHECK(parse_formal_series(print_series(f), p, N) == f);
      CHECK(formal_series_from_json(to_json(f)) == f);
    }
  }
}

TEST_CASE("JSON form validation") {
  CHECK(to_json(GroupSeries::from_terms(3, 32, {{4, 2}, {7, 1}})) ==
        R"({"coefficients":[[4,2],[7,1]],"kind":"group","p":3,"precision":32})");
  CHECK_THROWS_AS(group_series_from_json("{"), ParseError);
  CHECK_THROWS_AS(group_series_from_json(
                      R"({"p":3,"precision":8,"kind":"group","coefficients":[[7,1],[4,2]]})"),
                  ParseError);  // not ascending
  CHECK_THROWS_AS(group_series_from_json(
                      R"({"p":3,"precision":8,"kind":"group","coefficients":[[4,0]]})"),
                  ParseError);  // coefficient outside [1, p-1]
  CHECK_THROWS_AS(group_series_from_json(
                      R"({"p":3,"precision":8,"kind":"group","coefficients":[[1,1]]})"),
                  ParseError);  // group exponents start at 2
  CHECK_THROWS_AS(group_series_from_json(
                      R"({"p":3,"precision":8,"kind":"group","coefficients":[[9,1]]})"),
                  PrecisionError);
  CHECK_THROWS_AS(group_series_from_json(
                      R"({"p":3,"precision":8,"kind":"formal","coefficients":[]})"),
                  ParseError);  // wrong kind for the requested type
}

