#pragma once

// Linear relations between Fourier coefficients and the reports produced by
// evaluating them.

#include <algorithm>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "ctsym/symbol.hpp"
#include "ctsym/symbol_io.hpp"

namespace ctsym {

/// Absolute tolerance for coefficient identities.
inline constexpr double kCoefficientTol = 1e-12;

/// weight * coefficient `index` of entry `component` (0 for scalar symbols,
/// 0..3 for phi1..phi4).
struct Term {
  int component = 0;
  Index index = 0;
  Complex weight{1.0, 0.0};

  friend bool operator==(const Term&, const Term&) = default;
};

enum class RelationKind { equality, vanish };

/// sum(lhs) = sum(rhs); an empty rhs means sum(lhs) = 0.
struct Relation {
  std::vector<Term> lhs;
  std::vector<Term> rhs;
  std::string family;

  RelationKind kind() const noexcept { return rhs.empty() ? RelationKind::vanish : RelationKind::equality; }

  static Relation equal(Index a, Index b, std::string family) { return {{{0, a, 1.0}}, {{0, b, 1.0}}, std::move(family)}; }
  static Relation vanish(Index a, std::string family) { return {{{0, a, 1.0}}, {}, std::move(family)}; }

  /// Largest |index| referenced.
  Index reach() const {
    Index r = 0;
    for (const auto* side : {&lhs, &rhs})
      for (const auto& t : *side) r = std::max(r, t.index < 0 ? -t.index : t.index);
    return r;
  }
};

namespace detail {

inline std::string render_side(const std::vector<Term>& terms, bool scalar) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& t : terms) {
    if (t.weight == Complex{1.0, 0.0}) {
      if (!out.empty()) out += '+';
    } else if (t.weight == Complex{-1.0, 0.0}) {
      out += '-';
    } else {
      if (!out.empty()) out += '+';
      out += '(' + shortest(t.weight.real()) + (std::signbit(t.weight.imag()) ? "" : "+") + shortest(t.weight.imag()) +
             "i)*";
    }
    out += scalar ? "phi" : "phi" + std::to_string(t.component + 1);
    out += '(' + std::to_string(t.index) + ')';
  }
  return out;
}

inline std::string side_key(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return std::tuple(a.component, a.index, a.weight.real(), a.weight.imag()) <
           std::tuple(b.component, b.index, b.weight.real(), b.weight.imag());
  });
  return render_side(terms, false);
}

}  // namespace detail

inline std::string render(const Relation& r, bool scalar) {
  return detail::render_side(r.lhs, scalar) + " = " + detail::render_side(r.rhs, scalar);
}

/// Builds a relation list with duplicates (in either orientation) removed.
class RelationSet {
 public:
  void add(Relation r) {
    const std::string l = detail::side_key(r.lhs);
    const std::string rr = detail::side_key(r.rhs);
    const std::string key = r.rhs.empty() ? l + "=0" : std::min(l + "=" + rr, rr + "=" + l);
    if (seen_.insert(key).second) relations_.push_back(std::move(r));
  }

  /// Adds r only when every referenced index lies in [-window, window].
  void add_within(Relation r, Index window) {
    if (r.reach() <= window) add(std::move(r));
  }

  std::vector<Relation> take() { return std::move(relations_); }
  const std::vector<Relation>& relations() const noexcept { return relations_; }

 private:
  std::set<std::string> seen_;
  std::vector<Relation> relations_;
};

enum class ConditionMode { iff, necessary_only, conjecture };

inline std::string_view mode_name(ConditionMode m) {
  switch (m) {
    case ConditionMode::iff: return "iff";
    case ConditionMode::necessary_only: return "necessary_only";
    case ConditionMode::conjecture: return "conjecture";
  }
  return "?";
}

struct Violation {
  Relation relation;
  Complex lhs_value;
  Complex rhs_value;
};

struct FamilyTally {
  std::size_t checked = 0;
  std::size_t violated = 0;
};

/// Outcome of checking a coefficient characterization. satisfied is true
/// exactly when violations is empty.
struct ConditionReport {
  bool satisfied = true;
  ConditionMode mode = ConditionMode::iff;
  std::string theorem;
  bool scalar = true;
  std::size_t relations_checked = 0;
  std::vector<Violation> violations;
  std::map<std::string, FamilyTally> families;
  /// Conjecture mode only: verdict of the raw relations derived from C T C = T^*.
  std::optional<bool> raw_satisfied;

  bool family_satisfied(const std::string& family) const {
    auto it = families.find(family);
    return it == families.end() || it->second.violated == 0;
  }
};

template <class Coef>
Complex evaluate_side(const std::vector<Term>& terms, const Coef& coef) {
  Complex s{};
  for (const auto& t : terms) s += t.weight * coef(t.component, t.index);
  return s;
}

/// Evaluate every relation against the coefficient accessor coef(component, index).
template <class Coef>
ConditionReport evaluate_relations(const std::vector<Relation>& relations, const Coef& coef, ConditionMode mode,
                                   std::string theorem, bool scalar) {
  ConditionReport rep;
  rep.mode = mode;
  rep.theorem = std::move(theorem);
  rep.scalar = scalar;
  rep.relations_checked = relations.size();
  for (const auto& r : relations) {
    const Complex lv = evaluate_side(r.lhs, coef);
    const Complex rv = evaluate_side(r.rhs, coef);
    auto& tally = rep.families[r.family];
    ++tally.checked;
    if (std::abs(lv - rv) > kCoefficientTol) {
      ++tally.violated;
      rep.violations.push_back({r, lv, rv});
    }
  }
  rep.satisfied = rep.violations.empty();
  return rep;
}

inline auto scalar_accessor(const LaurentSymbol& phi) {
  return [&phi](int, Index k) { return phi.coefficient(k); };
}

inline auto matrix_accessor(const MatrixSymbol& phi) {
  return [&phi](int e, Index k) { return phi.entry(e).coefficient(k); };
}

/// True when every relation holds for phi within kCoefficientTol.
inline bool relations_hold(const std::vector<Relation>& relations, const LaurentSymbol& phi) {
  const auto coef = scalar_accessor(phi);
  return std::all_of(relations.begin(), relations.end(), [&](const Relation& r) {
    return std::abs(evaluate_side(r.lhs, coef) - evaluate_side(r.rhs, coef)) <= kCoefficientTol;
  });
}

inline bool relations_hold(const std::vector<Relation>& relations, const MatrixSymbol& phi) {
  const auto coef = matrix_accessor(phi);
  return std::all_of(relations.begin(), relations.end(), [&](const Relation& r) {
    return std::abs(evaluate_side(r.lhs, coef) - evaluate_side(r.rhs, coef)) <= kCoefficientTol;
  });
}

inline void to_json(nlohmann::json& j, const ConditionReport& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"family", v.relation.family},
                          {"lhs", detail::render_side(v.relation.lhs, r.scalar)},
                          {"rhs", detail::render_side(v.relation.rhs, r.scalar)},
                          {"lhs_value", {v.lhs_value.real(), v.lhs_value.imag()}},
                          {"rhs_value", {v.rhs_value.real(), v.rhs_value.imag()}}});
  }
  nlohmann::json families = nlohmann::json::object();
  for (const auto& [name, t] : r.families) families[name] = {{"checked", t.checked}, {"violated", t.violated}};
  j = {{"satisfied", r.satisfied},
       {"mode", mode_name(r.mode)},
       {"theorem", r.theorem},
       {"relations_checked", r.relations_checked},
       {"families", std::move(families)},
       {"violations", std::move(violations)}};
  if (r.raw_satisfied) j["raw_satisfied"] = *r.raw_satisfied;
}

}  // namespace ctsym
