#pragma once

// Brute-force decision of C-symmetry: the normalized Frobenius norm of
// C T C - T^* on an exact truncation.

#include <Eigen/Dense>

#include <algorithm>
#include <vector>
#include <variant>

#include "json.hpp"

#include "ctsym/conjugation.hpp"
#include "ctsym/random.hpp"
#include "ctsym/subspace.hpp"
#include "ctsym/symbol.hpp"
#include "ctsym/toeplitz.hpp"

namespace ctsym {

inline constexpr double kDefaultSymmetryTol = 1e-10;

struct SymmetryReport {
  double residual = 0.0;
  int n_used = 0;
  bool symmetric = false;
  double tol = kDefaultSymmetryTol;
};

inline void to_json(nlohmann::json& j, const SymmetryReport& r) {
  j = {{"residual", r.residual},
       {"n", r.n_used},
       {"verdict", r.symmetric ? "symmetric" : "not_symmetric"},
       {"tol", r.tol}};
}

namespace detail {

// C T C - T^* as a matrix: C T C x = A conj(T A conj(x)) = A conj(T) conj(A) x.
inline ComplexMatrix symmetry_defect(const ComplexMatrix& t, const ComplexMatrix& a) {
  return a * t.conjugate() * a.conjugate() - t.adjoint();
}

}  // namespace detail

/// ||A conj(T) conj(A) - T^*||_F / max(1, ||T||_F).
inline double residual(const TruncatedToeplitz& t, const AntilinearOperator& c) {
  if (t.dim() != c.dim())
    throw DimensionError("Toeplitz section of dimension " + std::to_string(t.dim()) +
                         " against conjugation of dimension " + std::to_string(c.dim()));
  return detail::symmetry_defect(t.data(), c.matrix()).norm() / std::max(1.0, t.data().norm());
}

namespace detail {

inline void check_tol(double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be > 0");
}

inline int checked_order(std::int64_t n) {
  if (n > kMaxTruncationOrder) throw DomainError("required truncation " + std::to_string(n) + " exceeds dense limit");
  return static_cast<int>(n);
}

}  // namespace detail

/// Oracle verdict at an explicit truncation order.
inline SymmetryReport is_c_symmetric_at(const LaurentSymbol& phi, const ConjugationSpec& spec, int n,
                                        double tol = kDefaultSymmetryTol) {
  detail::check_tol(tol);
  if (spec.is_block()) throw DomainError("scalar symbol given a block conjugation");
  const double r = residual(truncate(phi, n), truncated_matrix(spec, n));
  return {r, n, r <= tol, tol};
}

inline SymmetryReport is_c_symmetric_at(const MatrixSymbol& phi, const ConjugationSpec& spec, int n,
                                        double tol = kDefaultSymmetryTol) {
  detail::check_tol(tol);
  if (!spec.is_block()) throw DomainError("matrix symbol given a scalar conjugation");
  const double r = residual(block_truncate(phi, n), truncated_matrix(spec, n));
  return {r, n, r <= tol, tol};
}

/// Oracle verdict at min_truncation(bandwidth, spec).
template <class Symbol>
SymmetryReport is_c_symmetric(const Symbol& phi, const ConjugationSpec& spec, double tol = kDefaultSymmetryTol) {
  return is_c_symmetric_at(phi, spec, detail::checked_order(min_truncation(phi.bandwidth(), spec)), tol);
}

/// Real basis of the symbols of bandwidth <= band whose truncation satisfies
/// C T C = T^*. The map phi -> C T_phi C - T_phi^* is real-linear, so the
/// symmetric symbols form a real subspace; it is computed as the kernel of
/// that map, independent of any coefficient condition.
inline SymbolSubspace symmetric_subspace(const ConjugationSpec& spec, Index band) {
  if (band < 0) throw DomainError("band must be >= 0");
  const int entries = spec.is_block() ? 4 : 1;
  const Eigen::Index vars = SymbolSubspace::coordinates(entries, band);
  const int n = detail::checked_order(min_truncation(band, spec));
  const ComplexMatrix a = truncated_matrix(spec, n).matrix();

  std::vector<Eigen::VectorXd> columns;
  columns.reserve(static_cast<std::size_t>(vars));
  for (Eigen::Index v = 0; v < vars; ++v) {
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(vars);
    unit(v) = 1.0;
    ComplexMatrix t;
    if (spec.is_block()) {
      const MatrixSymbol phi{SymbolSubspace::vector_to_symbol(unit, band, 0), SymbolSubspace::vector_to_symbol(unit, band, 1),
                             SymbolSubspace::vector_to_symbol(unit, band, 2), SymbolSubspace::vector_to_symbol(unit, band, 3)};
      t = block_truncate(phi, n).data();
    } else {
      t = truncate(SymbolSubspace::vector_to_symbol(unit, band, 0), n).data();
    }
    const ComplexMatrix d = detail::symmetry_defect(t, a);
    const auto flat = Eigen::Map<const Eigen::VectorXcd>(d.data(), d.size());
    Eigen::VectorXd col(2 * d.size());
    col << flat.real(), flat.imag();
    columns.push_back(std::move(col));
  }
  Eigen::MatrixXd gram(vars, vars);
  for (Eigen::Index r = 0; r < vars; ++r)
    for (Eigen::Index c = r; c < vars; ++c)
      gram(r, c) = gram(c, r) = columns[static_cast<std::size_t>(r)].dot(columns[static_cast<std::size_t>(c)]);
  return SymbolSubspace(entries, band, SymbolSubspace::null_space(gram));
}

}  // namespace ctsym
