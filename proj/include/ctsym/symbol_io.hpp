#pragma once

// Text and JSON forms of symbols.
//
// Text grammar (whitespace is free between tokens):
//
//   symbol  := [sign] term { sign term }
//   term    := coeff [ ['*'] zpart ] | zpart
//   coeff   := real ['i'] | 'i' | '(' part { sign part } ')'
//   part    := real ['i'] | 'i'          (first part may carry a sign)
//   zpart   := 'z' [ '^' [sign] digits | '^' '(' [sign] digits ')' ]
//   sign    := '+' | '-' | U+2212
//
// A bare 'z' is z^1; a term without zpart is z^0. Unparenthesized
// "1+2i z^3" reads as 1 + (2i) z^3; write "(1+2i) z^3" for a complex
// coefficient. Terms with the same exponent are summed and exact zeros dropped.
//
// A MatrixSymbol in text is its four entries phi1; phi2; phi3; phi4.
//
// JSON: {"k": [re, im], ...} with decimal string keys. A MatrixSymbol is
// [[phi1, phi2], [phi3, phi4]].

#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <string>
#include <string_view>
#include <system_error>

#include "json.hpp"

#include "ctsym/symbol.hpp"

namespace ctsym {

namespace detail {

class SymbolParser {
 public:
  explicit SymbolParser(std::string_view text) : s_(text) {}

  LaurentSymbol parse() {
    skip_ws();
    if (at_end()) fail("empty symbol");
    bool first = true;
    while (true) {
      double sign = 1.0;
      if (!consume_sign(sign) && !first) fail("expected '+' or '-'");
      skip_ws();
      auto [coeff, exponent] = parse_term();
      add(exponent, sign < 0 ? -coeff : coeff);
      skip_ws();
      if (at_end()) break;
      first = false;
    }
    return LaurentSymbol(std::move(coeffs_));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  void skip_ws() {
    while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
  }

  bool consume_sign(double& sign) {
    if (peek() == '+') {
      ++pos_;
      sign = 1.0;
      return true;
    }
    if (peek() == '-') {
      ++pos_;
      sign = -1.0;
      return true;
    }
    // U+2212 MINUS SIGN
    if (s_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      sign = -1.0;
      return true;
    }
    return false;
  }

  static bool starts_number(char c) { return (c >= '0' && c <= '9') || c == '.'; }

  double parse_real() {
    double value = 0.0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec == std::errc::result_out_of_range) fail("coefficient out of range");
    if (ec != std::errc{}) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  // real ['i'] | 'i'; sets is_imag.
  double parse_part(bool& is_imag) {
    double v = 1.0;
    if (starts_number(peek())) {
      v = parse_real();
      skip_ws();
    } else if (peek() != 'i') {
      fail("expected a number");
    }
    is_imag = peek() == 'i';
    if (is_imag) ++pos_;
    return v;
  }

  Complex parse_paren() {
    ++pos_;  // '('
    double re = 0.0, im = 0.0;
    bool have_re = false, have_im = false;
    bool first = true;
    while (true) {
      skip_ws();
      double sign = 1.0;
      if (!consume_sign(sign) && !first) fail("expected '+', '-' or ')'");
      skip_ws();
      bool is_imag = false;
      const double v = sign * parse_part(is_imag);
      // assign on first sight so signed zeros survive a round trip
      double& slot = is_imag ? im : re;
      bool& seen = is_imag ? have_im : have_re;
      slot = seen ? slot + v : v;
      seen = true;
      skip_ws();
      if (peek() == ')') {
        ++pos_;
        return {re, im};
      }
      if (at_end()) fail("unterminated '('");
      first = false;
    }
  }

  Index parse_exponent() {
    bool paren = false;
    skip_ws();
    if (peek() == '(') {
      paren = true;
      ++pos_;
      skip_ws();
    }
    double sign = 1.0;
    consume_sign(sign);
    skip_ws();
    std::int64_t k = 0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec == std::errc::result_out_of_range) fail("exponent overflow");
    if (ec != std::errc{}) fail("expected an integer exponent");
    if (k > kMaxExponent) fail("exponent beyond index range");
    pos_ += static_cast<std::size_t>(ptr - first);
    if (paren) {
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
    }
    return sign < 0 ? -k : k;
  }

  std::pair<Complex, Index> parse_term() {
    Complex coeff{1.0, 0.0};
    bool have_coeff = false;
    if (peek() == '(') {
      coeff = parse_paren();
      have_coeff = true;
    } else if (starts_number(peek()) || peek() == 'i') {
      bool is_imag = false;
      const double v = parse_part(is_imag);
      coeff = is_imag ? Complex{0.0, v} : Complex{v, 0.0};
      have_coeff = true;
    }
    skip_ws();
    bool star = false;
    if (have_coeff && peek() == '*') {
      ++pos_;
      star = true;
      skip_ws();
    }
    if (peek() == 'z') {
      ++pos_;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        return {coeff, parse_exponent()};
      }
      return {coeff, 1};
    }
    if (star) fail("expected 'z' after '*'");
    if (!have_coeff) fail("expected a term");
    return {coeff, 0};
  }

  void add(Index k, Complex c) {
    auto [it, inserted] = coeffs_.emplace(k, c);
    if (!inserted) it->second += c;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  LaurentSymbol::Coefficients coeffs_;
};

inline std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace detail

/// Parse the text grammar above. Throws ParseError with the byte offset.
inline LaurentSymbol parse_symbol(std::string_view text) { return detail::SymbolParser(text).parse(); }

/// Four ';'-separated entries in row-major order.
inline MatrixSymbol parse_matrix_symbol(std::string_view text) {
  std::array<LaurentSymbol, 4> e;
  std::size_t start = 0;
  for (int k = 0; k < 4; ++k) {
    const std::size_t pos = text.find(';', start);
    if ((pos == std::string_view::npos) != (k == 3))
      throw ParseError(k == 3 ? "more than four matrix entries" : "expected four ';'-separated entries",
                       pos == std::string_view::npos ? text.size() : pos);
    const std::size_t end = k == 3 ? text.size() : pos;
    try {
      e[static_cast<std::size_t>(k)] = parse_symbol(text.substr(start, end - start));
    } catch (const ParseError& err) {
      throw ParseError(err.reason(), start + err.offset());
    }
    start = end + 1;
  }
  return {e[0], e[1], e[2], e[3]};
}

/// Canonical text form; parse_symbol(to_text(phi)) == phi bit for bit.
inline std::string to_text(const LaurentSymbol& phi) {
  if (phi.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : phi.coefficients()) {
    if (!out.empty()) out += " + ";
    out += '(';
    out += detail::shortest(c.real());
    if (!std::signbit(c.imag())) out += '+';
    out += detail::shortest(c.imag());
    out += "i)";
    if (k != 0) {
      out += "z^";
      out += std::to_string(k);
    }
  }
  return out;
}

inline std::string to_text(const MatrixSymbol& m) {
  std::string out;
  for (int e = 0; e < 4; ++e) out += (e ? "; " : "") + to_text(m.entry(e));
  return out;
}

inline void to_json(nlohmann::json& j, const LaurentSymbol& phi) {
  j = nlohmann::json::object();
  for (const auto& [k, c] : phi.coefficients()) j[std::to_string(k)] = {c.real(), c.imag()};
}

inline void from_json(const nlohmann::json& j, LaurentSymbol& phi) {
  if (!j.is_object()) throw DomainError("symbol JSON must be an object");
  LaurentSymbol::Coefficients out;
  for (const auto& [key, value] : j.items()) {
    Index k = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), k);
    if (ec != std::errc{} || ptr != key.data() + key.size())
      throw DomainError("symbol JSON key is not an integer: \"" + key + "\"");
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number())
      throw DomainError("symbol JSON value for key " + key + " must be [re, im]");
    const Complex c{value[0].get<double>(), value[1].get<double>()};
    auto [it, inserted] = out.emplace(k, c);
    if (!inserted) it->second += c;
  }
  phi = LaurentSymbol(std::move(out));
}

inline void to_json(nlohmann::json& j, const MatrixSymbol& m) {
  j = nlohmann::json::array({nlohmann::json::array({m.entry(0), m.entry(1)}),
                             nlohmann::json::array({m.entry(2), m.entry(3)})});
}

inline void from_json(const nlohmann::json& j, MatrixSymbol& m) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
      j[1].size() != 2)
    throw DomainError("matrix symbol JSON must be [[phi1, phi2], [phi3, phi4]]");
  m = MatrixSymbol(j[0][0].get<LaurentSymbol>(), j[0][1].get<LaurentSymbol>(), j[1][0].get<LaurentSymbol>(),
                   j[1][1].get<LaurentSymbol>());
}

}  // namespace ctsym
