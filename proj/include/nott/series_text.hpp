#pragma once

#include <string>

#include "nott/series.hpp"

namespace nott {

// Series text grammar (canonical form round-trips exactly):
//   group series:  "t" (ws sign ws term)*
//   formal series: term (ws sign ws term)* | "0"
//   term:          [coeff "*"]? "t^" exponent
//   sign:          "+" | "-"
// Canonical output uses ascending exponents, coefficients reduced into
// [1, p-1] and "+" only.
GroupSeries parse_group_series(const std::string& text, uint32_t p, uint32_t N,
                               bool truncate_excess = false);
FormalSeries parse_formal_series(const std::string& text, uint32_t p, uint32_t N,
                                 bool truncate_excess = false);

std::string print_series(const GroupSeries& s);
std::string print_series(const FormalSeries& s);

// JSON form, e.g. {"p":3,"precision":32,"kind":"group",
// "coefficients":[[4,2],[7,1]]}: exponent/coefficient pairs sorted ascending,
// coefficients in [1, p-1]; exponents >= 2 for kind "group" (the leading t is
// implicit), >= 1 for kind "formal".
std::string to_json(const GroupSeries& s);
std::string to_json(const FormalSeries& s);
GroupSeries group_series_from_json(const std::string& text);
FormalSeries formal_series_from_json(const std::string& text);

}  // namespace nott
