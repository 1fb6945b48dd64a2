#pragma once

// Coefficient characterizations of C-symmetric Toeplitz operators: the raw
// relation tables, the theorem-form conditions, their checkers and the
// projections onto the condition sets.

#include <Eigen/Dense>

#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ctsym/conjugation.hpp"
#include "ctsym/error.hpp"
#include "ctsym/relation.hpp"
#include "ctsym/subspace.hpp"
#include "ctsym/symbol.hpp"

namespace ctsym {

/// Relations are enumerated for every l whose referenced indices lie in
/// [-window, window]; beyond the band both sides vanish.
inline Index relation_window(Index band, int period) { return band + 2 * static_cast<Index>(period); }

namespace detail {

inline void check_band(Index band) {
  if (band < 0) throw DomainError("band must be >= 0");
}

inline void check_transposition(int p, int i, int j) {
  if (!(0 <= i && i < j && j < p)) throw DomainError("transposition requires 0 <= i < j < p");
}

// Range of l so that p*l alone stays within the window, padded by one block on
// each side; add_within does the exact filtering.
inline Index l_bound(Index window, int p) { return window / p + 2; }

inline Term t(int component, Index index, double weight = 1.0) { return {component, index, Complex{weight, 0.0}}; }

}  // namespace detail

/// The relations obtained by comparing coefficients in C T C = T^* for
/// C = C_p^{i,j}, one row of the table per family.
inline std::vector<Relation> raw_relations_transposition(int p, int i, int j, Index band) {
  detail::check_transposition(p, i, j);
  detail::check_band(band);
  const Index w = relation_window(band, p);
  const Index lb = detail::l_bound(w, p);
  RelationSet set;
  for (Index l = -lb; l <= lb; ++l) {
    const Index pl = static_cast<Index>(p) * l;
    set.add_within(Relation::equal(pl, -pl, "row1"), w);
    set.add_within(Relation::equal(j - i + pl, j - i - pl, "row2"), w);
    set.add_within(Relation::equal(i - j + pl, i - j - pl, "row2"), w);
    for (int a = 0; a < p; ++a) {
      if (a == i || a == j) continue;
      set.add_within(Relation::equal(a - i + pl, j - a - pl, "row3"), w);
      set.add_within(Relation::equal(a - j + pl, i - a - pl, "row3"), w);
      set.add_within(Relation::equal(i - a + pl, a - j - pl, "row4"), w);
      set.add_within(Relation::equal(j - a + pl, a - i - pl, "row4"), w);
      for (int b = 0; b < p; ++b) {
        if (b == a || b == i || b == j) continue;
        set.add_within(Relation::equal(b - a + pl, a - b - pl, "row5"), w);
      }
    }
  }
  return set.take();
}

/// The same comparison for an arbitrary involution sigma: for residues s, r
/// the coefficient phi(sigma(s) - sigma(r) + pl) equals phi(r - s - pl).
inline std::vector<Relation> raw_relations_permutation(const std::vector<int>& sigma, Index band) {
  detail::check_band(band);
  const int p = static_cast<int>(sigma.size());
  if (p < 1) throw DomainError("sigma must act on at least one symbol");
  const Index w = relation_window(band, p);
  const Index lb = detail::l_bound(w, p);
  RelationSet set;
  for (Index l = -lb; l <= lb; ++l) {
    const Index pl = static_cast<Index>(p) * l;
    for (int s = 0; s < p; ++s)
      for (int r = 0; r < p; ++r)
        set.add_within(Relation::equal(sigma[static_cast<std::size_t>(s)] - sigma[static_cast<std::size_t>(r)] + pl,
                                       r - s - pl, "sigma_rule"),
                       w);
  }
  return set.take();
}

/// The Interchange and Sign rules for p = m q + 1 (m >= 2), i = q - 1,
/// j = p - 1, together with phi(pl) = phi(-pl) for residue zero.
inline std::vector<Relation> interchange_sign_relations(int p, int q, Index band) {
  detail::check_band(band);
  if (q < 1 || p < 2 || (p - 1) % q != 0 || (p - 1) / q < 2)
    throw DomainError("interchange/sign rules need p = m q + 1 with m >= 2");
  const Index w = relation_window(band, p);
  const Index lb = detail::l_bound(w, p);
  const int gap = p - q;
  std::vector<int> values;
  for (int c = 1; c < p; ++c)
    if (c != gap) {
      values.push_back(c);
      values.push_back(-c);
    }
  const int sign_top = q == 1 ? p - 3 : p - 2;
  RelationSet set;
  for (Index l = -lb; l <= lb; ++l) {
    const Index pl = static_cast<Index>(p) * l;
    for (int c : values)
      for (int d : values)
        if (std::abs(c + d) == gap) set.add_within(Relation::equal(c + pl, d - pl, "interchange"), w);
    set.add_within(Relation::equal(gap + pl, gap - pl, "interchange"), w);
    set.add_within(Relation::equal(-gap + pl, -gap - pl, "interchange"), w);
    for (int c = 1; c <= sign_top; ++c) set.add_within(Relation::equal(c + pl, -c - pl, "sign"), w);
    set.add_within(Relation::equal(pl, -pl, "residue_zero"), w);
  }
  return set.take();
}

/// phi(pl) = phi(-pl) and phi(r + pl) = 0 for 1 <= r <= p - 1.
inline std::vector<Relation> periodic_theorem_relations(int p, Index band) {
  detail::check_band(band);
  if (p < 1) throw DomainError("period must be >= 1");
  const Index w = relation_window(band, p);
  const Index lb = detail::l_bound(w, p);
  RelationSet set;
  for (Index l = -lb; l <= lb; ++l) {
    const Index pl = static_cast<Index>(p) * l;
    set.add_within(Relation::equal(pl, -pl, "multiple_symmetry"), w);
    for (int r = 1; r < p; ++r) set.add_within(Relation::vanish(r + pl, "residue_vanish"), w);
  }
  return set.take();
}

/// phi(-n) = lambda^n phi(n) for 0 < |n| <= window; lambda^n by repeated multiplication.
inline std::vector<Relation> mu_lambda_relations(Complex lambda, Index band) {
  detail::check_band(band);
  if (!(std::abs(std::abs(lambda) - 1.0) <= kUnitModulusTol)) throw DomainError("lambda must have unit modulus");
  const Index w = relation_window(band, 1);
  RelationSet set;
  Complex up{1.0, 0.0}, down{1.0, 0.0};
  for (Index n = 1; n <= w; ++n) {
    up *= lambda;
    down *= std::conj(lambda);
    set.add({{detail::t(0, -n)}, {{0, n, up}}, "lambda_symmetry"});
    set.add({{detail::t(0, n)}, {{0, -n, down}}, "lambda_symmetry"});
  }
  return set.take();
}

enum class BlockForm { theorem3, theorem4 };

inline std::string_view block_form_name(BlockForm f) { return f == BlockForm::theorem3 ? "theorem3" : "theorem4"; }

namespace detail {

// Components 0..3 are phi1..phi4.
inline void odd_vanish(RelationSet& set, Index l, Index w) {
  for (int e = 0; e < 4; ++e) set.add_within({{t(e, 2 * l + 1)}, {}, "odd_vanish"}, w);
}

}  // namespace detail

/// Conditions for symmetry under the block conjugation C.
inline std::vector<Relation> block_c_relations(BlockForm form, Index band) {
  using detail::t;
  detail::check_band(band);
  const Index w = relation_window(band, 2);
  const Index lb = detail::l_bound(w, 2);
  RelationSet set;
  for (Index l = -lb; l <= lb; ++l) {
    const Index e = 2 * l;
    if (form == BlockForm::theorem3) {
      set.add_within({{t(0, e), t(1, e)}, {t(0, -e), t(1, -e)}, "sum12_even_symmetric"}, w);
      set.add_within({{t(2, e), t(3, e, -1)}, {t(2, -e), t(3, -e, -1)}, "diff34_even_symmetric"}, w);
      set.add_within({{t(0, e), t(1, e, -1)}, {t(2, -e), t(3, -e)}, "cross_even"}, w);
    } else {
      set.add_within({{t(0, e), t(1, e)}, {t(0, -e), t(1, -e)}, "sum12_even_symmetric"}, w);
      set.add_within({{t(0, e), t(2, e)}, {t(0, -e), t(2, -e)}, "sum13_even_symmetric"}, w);
      set.add_within({{t(0, e), t(3, e)}, {t(0, -e), t(3, -e)}, "sum14_even_symmetric"}, w);
    }
    detail::odd_vanish(set, l, w);
  }
  return set.take();
}

/// The minimal condition list stated for the block conjugation C-tilde, as printed.
inline std::vector<Relation> block_ctilde_printed_relations(Index band) {
  using detail::t;
  detail::check_band(band);
  const Index w = relation_window(band, 2);
  const Index lb = detail::l_bound(w, 2);
  RelationSet set;
  for (Index l = -lb; l <= lb; ++l) {
    const Index e = 2 * l;
    set.add_within({{t(0, e + 1), t(3, e + 1)}, {}, "sum14_odd_vanish"}, w);
    set.add_within({{t(1, e + 1), t(2, e + 1, -1)}, {}, "diff23_odd_vanish"}, w);
    set.add_within({{t(0, e), t(0, e + 2, -1)}, {t(0, -e), t(0, -e - 2, -1)}, "phi1_telescoping"}, w);
    set.add_within({{t(1, e), t(0, e - 2, -1)}, {t(1, -e), t(1, -e + 2, -1)}, "phi2_telescoping"}, w);
    set.add_within({{t(2, e), t(0, e - 2, -1)}, {t(2, -e), t(2, -e + 2, -1)}, "phi3_telescoping"}, w);
    set.add_within({{t(3, e), t(0, e + 2, -1)}, {t(3, -e), t(3, -e - 2, -1)}, "phi4_telescoping"}, w);
    set.add_within({{t(1, e), t(2, e), t(0, e - 1), t(3, e - 1, -1)},
                    {t(1, -e), t(2, -e), t(0, -e - 1), t(3, -e - 1, -1)},
                    "mixed_even"},
                   w);
    set.add_within({{t(0, e), t(3, e, -1), t(1, e + 1), t(2, e + 1)},
                    {t(0, -e), t(3, -e, -1), t(1, -e - 1), t(2, -e - 1)},
                    "mixed_odd"},
                   w);
  }
  return set.take();
}

/// The twelve-line list obtained for C-tilde before the final simplification.
inline std::vector<Relation> block_ctilde_full_relations(Index band) {
  using detail::t;
  detail::check_band(band);
  const Index w = relation_window(band, 2);
  const Index lb = detail::l_bound(w, 2);
  RelationSet set;
  for (Index l = -lb; l <= lb; ++l) {
    const Index e = 2 * l;
    set.add_within({{t(0, e), t(1, e + 1)}, {t(0, -e), t(1, -e - 1)}, "line01"}, w);
    set.add_within({{t(0, e - 1), t(1, e)}, {t(0, -e - 1), t(1, -e)}, "line02"}, w);
    set.add_within({{t(0, e), t(1, e - 1)}, {t(0, -e), t(1, -e + 1)}, "line03"}, w);
    set.add_within({{t(0, e + 1), t(1, e)}, {t(0, -e + 1), t(1, -e)}, "line04"}, w);
    set.add_within({{t(0, e), t(1, e - 1, -1)}, {t(3, -e), t(2, -e - 1)}, "line05"}, w);
    set.add_within({{t(0, e + 1), t(1, e, -1)}, {t(3, -e - 1), t(2, -e)}, "line06"}, w);
    set.add_within({{t(0, e - 1), t(1, e, -1)}, {t(3, -e + 1), t(2, -e)}, "line07"}, w);
    set.add_within({{t(0, e), t(1, e + 1, -1)}, {t(3, -e), t(2, -e + 1)}, "line08"}, w);
    set.add_within({{t(2, e), t(3, e - 1, -1)}, {t(2, -e), t(3, -e - 1, -1)}, "line09"}, w);
    set.add_within({{t(2, e + 1), t(3, e, -1)}, {t(2, -e - 1), t(3, -e, -1)}, "line10"}, w);
    set.add_within({{t(2, e - 1), t(3, e, -1)}, {t(2, -e + 1), t(3, -e, -1)}, "line11"}, w);
    set.add_within({{t(2, e), t(3, e + 1, -1)}, {t(2, -e), t(3, -e + 1, -1)}, "line12"}, w);
  }
  return set.take();
}

/// Theorem cases with a proven characterization: p even with j - i = p/2, or
/// p = m q + 1 (m >= 2) with i = q - 1 and j = p - 1.
inline bool transposition_covered(int p, int i, int j) {
  detail::check_transposition(p, i, j);
  if (p % 2 == 0 && j - i == p / 2) return true;
  const int q = i + 1;
  return j == p - 1 && (p - 1) % q == 0 && (p - 1) / q >= 2;
}

namespace detail {

inline ConditionReport scalar_report(const std::vector<Relation>& rel, const LaurentSymbol& phi, ConditionMode mode,
                                     std::string theorem) {
  return evaluate_relations(rel, scalar_accessor(phi), mode, std::move(theorem), true);
}

inline ConditionReport matrix_report(const std::vector<Relation>& rel, const MatrixSymbol& phi, ConditionMode mode,
                                     std::string theorem) {
  return evaluate_relations(rel, matrix_accessor(phi), mode, std::move(theorem), false);
}

}  // namespace detail

/// Theorem conditions for C_p^{i,j}. Outside the covered cases the report is
/// in conjecture mode and also carries the raw-relation verdict.
inline ConditionReport check_mainthm(const LaurentSymbol& phi, int p, int i, int j) {
  const bool covered = transposition_covered(p, i, j);
  const Index band = phi.bandwidth();
  auto rep = detail::scalar_report(periodic_theorem_relations(p, band), phi,
                                   covered ? ConditionMode::iff : ConditionMode::conjecture, "transposition");
  if (!covered) rep.raw_satisfied = relations_hold(raw_relations_transposition(p, i, j, band), phi);
  return rep;
}

inline ConditionReport check_cn(const LaurentSymbol& phi, int n) {
  if (n < 1) throw DomainError("reversal requires n >= 1");
  return detail::scalar_report(periodic_theorem_relations(n, phi.bandwidth()), phi, ConditionMode::iff, "reversal");
}

inline ConditionReport check_mu_lambda(const LaurentSymbol& phi, Complex lambda) {
  return detail::scalar_report(mu_lambda_relations(lambda, phi.bandwidth()), phi, ConditionMode::iff, "mulambda");
}

inline ConditionReport check_block_c(const MatrixSymbol& phi, BlockForm form) {
  return detail::matrix_report(block_c_relations(form, phi.bandwidth()), phi, ConditionMode::iff,
                               "block_c/" + std::string(block_form_name(form)));
}

inline ConditionReport check_block_ctilde_necessary(const MatrixSymbol& phi) {
  return detail::matrix_report(block_ctilde_printed_relations(phi.bandwidth()), phi, ConditionMode::necessary_only,
                               "block_ctilde/printed");
}

inline ConditionReport check_block_ctilde_full_list(const MatrixSymbol& phi) {
  return detail::matrix_report(block_ctilde_full_relations(phi.bandwidth()), phi, ConditionMode::necessary_only,
                               "block_ctilde/full_list");
}

namespace detail {

inline bool is_identity(const std::vector<int>& sigma) {
  for (std::size_t m = 0; m < sigma.size(); ++m)
    if (sigma[m] != static_cast<int>(m)) return false;
  return true;
}

inline bool is_reversal(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  for (int m = 0; m < n; ++m)
    if (sigma[static_cast<std::size_t>(m)] != n - 1 - m) return false;
  return true;
}

// The swapped pair when sigma is a single transposition.
inline std::optional<std::pair<int, int>> single_swap(const std::vector<int>& sigma) {
  std::vector<int> moved;
  for (std::size_t m = 0; m < sigma.size(); ++m)
    if (sigma[m] != static_cast<int>(m)) moved.push_back(static_cast<int>(m));
  if (moved.size() != 2) return std::nullopt;
  return std::pair{moved[0], moved[1]};
}

}  // namespace detail

/// Conditions for a general involution sigma. Identity, reversal and single
/// transpositions use their theorems; anything else is conjecture mode with
/// the periodic conditions beside the raw sigma relations.
inline ConditionReport check_general(const LaurentSymbol& phi, const std::vector<int>& sigma) {
  const int p = static_cast<int>(sigma.size());
  if (detail::is_identity(sigma)) return check_cn(phi, 1);
  if (detail::is_reversal(sigma)) return check_cn(phi, p);
  if (auto sw = detail::single_swap(sigma)) return check_mainthm(phi, p, sw->first, sw->second);
  auto rep = detail::scalar_report(periodic_theorem_relations(p, phi.bandwidth()), phi, ConditionMode::conjecture,
                                   "general");
  rep.raw_satisfied = relations_hold(raw_relations_permutation(sigma, phi.bandwidth()), phi);
  return rep;
}

/// Dispatch to the characterization of a scalar conjugation.
inline ConditionReport check_conditions(const LaurentSymbol& phi, const ConjugationSpec& spec) {
  return std::visit(
      [&](const auto& s) -> ConditionReport {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GeneralPermutation>) return check_general(phi, s.sigma);
        else if constexpr (std::is_same_v<T, Transposition>) return check_mainthm(phi, s.p, s.i, s.j);
        else if constexpr (std::is_same_v<T, Reversal>) return check_cn(phi, s.n);
        else if constexpr (std::is_same_v<T, MuLambda>) return check_mu_lambda(phi, s.lambda);
        else throw DomainError("scalar symbol given a block conjugation");
      },
      spec.variant());
}

/// Dispatch to the characterization of a block conjugation (theorem3 form for C).
inline ConditionReport check_conditions(const MatrixSymbol& phi, const ConjugationSpec& spec) {
  switch (spec.family()) {
    case Family::block_c: return check_block_c(phi, BlockForm::theorem3);
    case Family::block_ctilde: return check_block_ctilde_necessary(phi);
    default: throw DomainError("matrix symbol given a scalar conjugation");
  }
}

namespace detail {

inline LaurentSymbol project_periodic(const LaurentSymbol& phi, int p) {
  LaurentSymbol::Coefficients out;
  for (const auto& [k, c] : phi.coefficients()) {
    if (k % p != 0) continue;
    const Complex v = 0.5 * (c + phi.coefficient(-k));
    out[k] = v;
    out[-k] = v;
  }
  return LaurentSymbol(std::move(out));
}

inline LaurentSymbol project_lambda(const LaurentSymbol& phi, Complex lambda) {
  LaurentSymbol::Coefficients out;
  out[0] = phi.coefficient(0);
  const Index band = phi.bandwidth();
  Complex pow{1.0, 0.0};
  for (Index n = 1; n <= band; ++n) {
    pow *= lambda;
    const Complex c = phi.coefficient(n);
    out[n] = c;
    out[-n] = c * pow;
  }
  return LaurentSymbol(std::move(out));
}

}  // namespace detail

/// A symbol satisfying the theorem conditions of spec, built from phi. Only
/// defined where the conditions characterize symmetry: reversal, mu-lambda,
/// and covered transpositions (and general sigma that reduce to them).
inline LaurentSymbol project_to_conditions(const LaurentSymbol& phi, const ConjugationSpec& spec) {
  return std::visit(
      [&](const auto& s) -> LaurentSymbol {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Transposition>) {
          if (!transposition_covered(s.p, s.i, s.j))
            throw DomainError("no proven characterization for transposition outside the theorem cases");
          return detail::project_periodic(phi, s.p);
        } else if constexpr (std::is_same_v<T, Reversal>) {
          return detail::project_periodic(phi, s.n);
        } else if constexpr (std::is_same_v<T, MuLambda>) {
          return detail::project_lambda(phi, s.lambda);
        } else if constexpr (std::is_same_v<T, GeneralPermutation>) {
          const int p = static_cast<int>(s.sigma.size());
          if (detail::is_identity(s.sigma)) return detail::project_periodic(phi, 1);
          if (detail::is_reversal(s.sigma)) return detail::project_periodic(phi, p);
          if (auto sw = detail::single_swap(s.sigma); sw && transposition_covered(p, sw->first, sw->second))
            return detail::project_periodic(phi, p);
          throw DomainError("no proven characterization for this permutation");
        } else {
          throw DomainError("project_to_conditions takes a scalar conjugation; use project_block_c");
        }
      },
      spec.variant());
}

/// A matrix symbol satisfying the block C conditions, built from phi.
inline MatrixSymbol project_block_c(const MatrixSymbol& phi) {
  const auto& f = phi.entries();
  const LaurentSymbol s = f[0] + f[1], u = f[0] - f[1], tt = f[2] - f[3], w = f[2] + f[3];
  LaurentSymbol::Coefficients s2, u2, t2, w2;
  const Index band = phi.bandwidth();
  for (Index k = -band; k <= band; ++k) {
    if (k % 2 != 0) continue;
    s2[k] = 0.5 * (s.coefficient(k) + s.coefficient(-k));
    t2[k] = 0.5 * (tt.coefficient(k) + tt.coefficient(-k));
    u2[k] = 0.5 * (u.coefficient(k) + w.coefficient(-k));
    w2[-k] = u2[k];
  }
  const LaurentSymbol S(s2), U(u2), T(t2), W(w2);
  return {0.5 * (S + U), 0.5 * (S - U), 0.5 * (T + W), 0.5 * (W - T)};
}

/// Real basis of the band-limited symbols (entries = 1 or 4) satisfying every
/// relation; coefficients beyond the band are zero and drop out.
inline SymbolSubspace relation_subspace(const std::vector<Relation>& relations, int entries, Index band) {
  detail::check_band(band);
  const Eigen::Index vars = SymbolSubspace::coordinates(entries, band);
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(2 * static_cast<Eigen::Index>(relations.size()), vars);
  Eigen::Index r = 0;
  for (const auto& rel : relations) {
    auto put = [&](const Term& term, double sign) {
      if (term.index < -band || term.index > band) return;
      if (term.component >= entries) throw DomainError("relation refers to a missing entry");
      const Eigen::Index x = SymbolSubspace::coordinate(band, term.component, term.index);
      const double wr = sign * term.weight.real(), wi = sign * term.weight.imag();
      rows(r, x) += wr;
      rows(r, x + 1) -= wi;
      rows(r + 1, x) += wi;
      rows(r + 1, x + 1) += wr;
    };
    for (const auto& term : rel.lhs) put(term, 1.0);
    for (const auto& term : rel.rhs) put(term, -1.0);
    r += 2;
  }
  return SymbolSubspace(entries, band, SymbolSubspace::null_space(rows.transpose() * rows));
}

}  // namespace ctsym
