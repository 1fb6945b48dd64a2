#pragma once

// Command-line mini syntax and JSON form of ConjugationSpec.
//
//   reversal:N               {"family":"reversal","n":N}
//   transposition:p:i:j      {"family":"transposition","p":p,"i":i,"j":j}
//   general:s0,s1,...        {"family":"general","sigma":[s0,s1,...]}
//   mulambda:re,im:re,im     {"family":"mulambda","mu":[re,im],"lambda":[re,im]}
//   block_c                  {"family":"block_c"}
//   block_ctilde             {"family":"block_ctilde"}

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ctsym/conjugation.hpp"
#include "ctsym/symbol_io.hpp"

namespace ctsym {

namespace detail {

struct Field {
  std::string_view text;
  std::size_t offset;
};

inline std::vector<Field> split(std::string_view s, char sep, std::size_t base) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    const std::size_t end = pos == std::string_view::npos ? s.size() : pos;
    out.push_back({s.substr(start, end - start), base + start});
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline int parse_int_field(const Field& f) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), v);
  if (ec != std::errc{} || ptr != f.text.data() + f.text.size() || f.text.empty())
    throw ParseError("expected an integer", f.offset);
  return v;
}

inline double parse_double_field(const Field& f) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), v);
  if (ec != std::errc{} || ptr != f.text.data() + f.text.size() || f.text.empty())
    throw ParseError("expected a number", f.offset);
  return v;
}

inline Complex parse_complex_field(const Field& f) {
  const auto parts = split(f.text, ',', f.offset);
  if (parts.size() != 2) throw ParseError("expected re,im", f.offset);
  return {parse_double_field(parts[0]), parse_double_field(parts[1])};
}

}  // namespace detail

/// Parse the mini syntax. Validation errors from the factories propagate as DomainError.
inline ConjugationSpec parse_spec(std::string_view text) {
  const auto fields = detail::split(text, ':', 0);
  const std::string_view head = fields[0].text;
  auto expect = [&](std::size_t count) {
    if (fields.size() != count)
      throw ParseError(std::string(head) + " expects " + std::to_string(count - 1) + " parameter(s)",
                       fields.size() > count ? fields[count].offset : text.size());
  };
  if (head == "reversal") {
    expect(2);
    return ConjugationSpec::reversal(detail::parse_int_field(fields[1]));
  }
  if (head == "transposition") {
    expect(4);
    return ConjugationSpec::transposition(detail::parse_int_field(fields[1]), detail::parse_int_field(fields[2]),
                                          detail::parse_int_field(fields[3]));
  }
  if (head == "general") {
    expect(2);
    std::vector<int> sigma;
    for (const auto& f : detail::split(fields[1].text, ',', fields[1].offset))
      sigma.push_back(detail::parse_int_field(f));
    return ConjugationSpec::general(std::move(sigma));
  }
  if (head == "mulambda") {
    expect(3);
    return ConjugationSpec::mu_lambda(detail::parse_complex_field(fields[1]), detail::parse_complex_field(fields[2]));
  }
  if (head == "block_c") {
    expect(1);
    return ConjugationSpec::block_hadamard();
  }
  if (head == "block_ctilde") {
    expect(1);
    return ConjugationSpec::block_mixed();
  }
  throw ParseError("unknown conjugation family \"" + std::string(head) + "\"", 0);
}

inline std::string to_text(const ConjugationSpec& spec) {
  std::string out(spec.name());
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GeneralPermutation>) {
          out += ':';
          for (std::size_t m = 0; m < s.sigma.size(); ++m) {
            if (m) out += ',';
            out += std::to_string(s.sigma[m]);
          }
        } else if constexpr (std::is_same_v<T, Transposition>) {
          out += ':' + std::to_string(s.p) + ':' + std::to_string(s.i) + ':' + std::to_string(s.j);
        } else if constexpr (std::is_same_v<T, Reversal>) {
          out += ':' + std::to_string(s.n);
        } else if constexpr (std::is_same_v<T, MuLambda>) {
          out += ':' + detail::shortest(s.mu.real()) + ',' + detail::shortest(s.mu.imag()) + ':' +
                 detail::shortest(s.lambda.real()) + ',' + detail::shortest(s.lambda.imag());
        }
      },
      spec.variant());
  return out;
}

inline void to_json(nlohmann::json& j, const ConjugationSpec& spec) {
  j = nlohmann::json{{"family", spec.name()}};
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GeneralPermutation>) {
          j["sigma"] = s.sigma;
        } else if constexpr (std::is_same_v<T, Transposition>) {
          j["p"] = s.p;
          j["i"] = s.i;
          j["j"] = s.j;
        } else if constexpr (std::is_same_v<T, Reversal>) {
          j["n"] = s.n;
        } else if constexpr (std::is_same_v<T, MuLambda>) {
          j["mu"] = {s.mu.real(), s.mu.imag()};
          j["lambda"] = {s.lambda.real(), s.lambda.imag()};
        }
      },
      spec.variant());
}

inline ConjugationSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
    throw DomainError("spec JSON needs a string \"family\"");
  const std::string family = j["family"].get<std::string>();
  auto complex_field = [&](const char* key) {
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 2) throw DomainError(std::string(key) + " must be [re, im]");
    return Complex{v[0].get<double>(), v[1].get<double>()};
  };
  try {
    if (family == "reversal") return ConjugationSpec::reversal(j.at("n").get<int>());
    if (family == "transposition")
      return ConjugationSpec::transposition(j.at("p").get<int>(), j.at("i").get<int>(), j.at("j").get<int>());
    if (family == "general") return ConjugationSpec::general(j.at("sigma").get<std::vector<int>>());
    if (family == "mulambda") return ConjugationSpec::mu_lambda(complex_field("mu"), complex_field("lambda"));
    if (family == "block_c") return ConjugationSpec::block_hadamard();
    if (family == "block_ctilde") return ConjugationSpec::block_mixed();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed spec JSON: ") + e.what());
  }
  throw DomainError("unknown conjugation family \"" + family + "\"");
}

}  // namespace ctsym
