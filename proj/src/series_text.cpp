#include "nott/series_text.hpp"

#include <json.hpp>

namespace nott {

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() { return pos < text.size() ? text[pos] : '\0'; }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  uint64_t number() {
    if (!isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected a number", pos);
    uint64_t value = 0;
    while (isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (text[pos] - '0');
      if (value > (1ull << 62)) throw ParseError("number too large", pos);
      ++pos;
    }
    return value;
  }
};

// [coeff "*"]? "t^" exponent; returns (exponent, coefficient mod p)
std::pair<uint64_t, uint32_t> parse_term(Cursor& cur, uint32_t p) {
  cur.skip_ws();
  uint64_t coeff = 1;
  if (isdigit(static_cast<unsigned char>(cur.peek()))) {
    coeff = cur.number();
    cur.skip_ws();
    if (!cur.eat('*')) throw ParseError("expected '*' after coefficient", cur.pos);
    cur.skip_ws();
  }
  if (!cur.eat('t')) throw ParseError("expected 't'", cur.pos);
  if (!cur.eat('^')) throw ParseError("expected '^' in term", cur.pos);
  uint64_t exponent = cur.number();
  if (exponent == 0) throw ParseError("exponent must be positive", cur.pos);
  return {exponent, static_cast<uint32_t>(coeff % p)};
}

void add_term(std::vector<uint32_t>& c, uint64_t exponent, uint32_t coeff,
              bool negative, uint32_t p, uint32_t N, bool truncate_excess,
              size_t pos) {
  if (exponent > N) {
    if (truncate_excess) return;
    throw PrecisionError("exponent " + std::to_string(exponent) +
                         " beyond precision " + std::to_string(N) +
                         " (position " + std::to_string(pos) + ")");
  }
  uint32_t value = negative ? (p - coeff) % p : coeff;
  c[exponent] = (c[exponent] + value) % p;
}

}  // namespace

GroupSeries parse_group_series(const std::string& text, uint32_t p, uint32_t N,
                               bool truncate_excess) {
  require_prime(p);
  Cursor cur{text};
  cur.skip_ws();
  if (!cur.eat('t')) throw ParseError("group series start with 't'", cur.pos);
  if (cur.peek() == '^')
    throw ParseError("group series start with a bare 't'", cur.pos);
  std::vector<uint32_t> c(N + 1, 0);
  c[1] = 1;
  while (!cur.done()) {
    bool negative;
    if (cur.eat('+'))
      negative = false;
    else if (cur.eat('-'))
      negative = true;
    else
      throw ParseError("expected '+' or '-'", cur.pos);
    size_t term_pos = cur.pos;
    auto [exponent, coeff] = parse_term(cur, p);
    if (exponent < 2)
      throw ParseError("group series terms need exponent >= 2", term_pos);
    add_term(c, exponent, coeff, negative, p, N, truncate_excess, term_pos);
  }
  return GroupSeries(FormalSeries(p, std::move(c)));
}

FormalSeries parse_formal_series(const std::string& text, uint32_t p, uint32_t N,
                                 bool truncate_excess) {
  require_prime(p);
  Cursor cur{text};
  cur.skip_ws();
  std::vector<uint32_t> c(N + 1, 0);
  if (cur.eat('0')) {
    if (!cur.done()) throw ParseError("trailing input after '0'", cur.pos);
    return FormalSeries(p, std::move(c));
  }
  bool first = true;
  while (!cur.done()) {
    bool negative = false;
    cur.skip_ws();
    if (cur.eat('+'))
      negative = false;
    else if (cur.eat('-'))
      negative = true;
    else if (!first)
      throw ParseError("expected '+' or '-'", cur.pos);
    size_t term_pos = cur.pos;
    auto [exponent, coeff] = parse_term(cur, p);
    add_term(c, exponent, coeff, negative, p, N, truncate_excess, term_pos);
    first = false;
  }
  if (first) throw ParseError("empty series", cur.pos);
  return FormalSeries(p, std::move(c));
}

std::string print_series(const GroupSeries& s) {
  std::string out = "t";
  for (uint32_t k = 2; k <= s.precision(); ++k) {
    uint32_t c = s.coeff(k);
    if (!c) continue;
    out += " + ";
    if (c != 1) out += std::to_string(c) + "*";
    out += "t^" + std::to_string(k);
  }
  return out;
}

std::string print_series(const FormalSeries& s) {
  std::string out;
  for (uint32_t k = 1; k <= s.precision(); ++k) {
    uint32_t c = s.coeff(k);
    if (!c) continue;
    if (!out.empty()) out += " + ";
    if (c != 1) out += std::to_string(c) + "*";
    out += "t^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

namespace {

nlohmann::json coefficients_json(const FormalSeries& s, uint32_t from) {
  auto pairs = nlohmann::json::array();
  for (uint32_t k = from; k <= s.precision(); ++k)
    if (s.coeff(k)) pairs.push_back({k, s.coeff(k)});
  return pairs;
}

std::pair<FormalSeries, std::string> series_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  try {
    uint32_t p = doc.at("p").get<uint32_t>();
    uint32_t N = doc.at("precision").get<uint32_t>();
    std::string kind = doc.at("kind").get<std::string>();
    if (kind != "group" && kind != "formal")
      throw ParseError("kind must be \"group\" or \"formal\"", 0);
    require_prime(p);
    std::vector<uint32_t> c(N + 1, 0);
    const uint32_t min_exponent = kind == "group" ? 2 : 1;
    int64_t last = -1;
    for (const auto& pair : doc.at("coefficients")) {
      if (!pair.is_array() || pair.size() != 2)
        throw ParseError("coefficients must be [exponent, value] pairs", 0);
      uint64_t k = pair[0].get<uint64_t>();
      uint32_t value = pair[1].get<uint32_t>();
      if (k < min_exponent)
        throw ParseError("exponent below the legal minimum", 0);
      if (k > N) throw PrecisionError("exponent beyond precision");
      if (static_cast<int64_t>(k) <= last)
        throw ParseError("exponents must be strictly ascending", 0);
      if (value == 0 || value >= p)
        throw ParseError("coefficients lie in [1, p-1]", 0);
      c[k] = value;
      last = static_cast<int64_t>(k);
    }
    if (kind == "group") c[1] = 1;
    return {FormalSeries(p, std::move(c)), kind};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid series JSON: ") + e.what(), 0);
  }
}

}  // namespace

std::string to_json(const GroupSeries& s) {
  nlohmann::json doc{{"p", s.prime()},
                     {"precision", s.precision()},
                     {"kind", "group"},
                     {"coefficients", coefficients_json(s.formal(), 2)}};
  return doc.dump();
}

std::string to_json(const FormalSeries& s) {
  nlohmann::json doc{{"p", s.prime()},
                     {"precision", s.precision()},
                     {"kind", "formal"},
                     {"coefficients", coefficients_json(s, 1)}};
  return doc.dump();
}

GroupSeries group_series_from_json(const std::string& text) {
  auto [series, kind] = series_from_json(text);
  if (kind != "group") throw ParseError("expected kind \"group\"", 0);
  return GroupSeries(std::move(series));
}

FormalSeries formal_series_from_json(const std::string& text) {
  auto [series, kind] = series_from_json(text);
  if (kind != "formal") throw ParseError("expected kind \"formal\"", 0);
  return series;
}

}  // namespace nott
