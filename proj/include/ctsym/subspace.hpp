#pragma once

// Real-linear spaces of band-limited symbols, stored as a basis over the
// coordinates (re, im) of each coefficient.

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

#include "ctsym/error.hpp"
#include "ctsym/random.hpp"
#include "ctsym/symbol.hpp"

namespace ctsym {

/// Coordinate layout: for entry e in [0, entries) and k = -band..band the
/// pair (re, im) of coefficient k sits at 2 * (e * (2 band + 1) + k + band).
class SymbolSubspace {
 public:
  SymbolSubspace(int entries, Index band, Eigen::MatrixXd basis)
      : entries_(entries), band_(band), basis_(std::move(basis)) {
    if (band < 0) throw DomainError("band must be >= 0");
    if (basis_.rows() != coordinates(entries, band)) throw DimensionError("basis has the wrong number of coordinates");
  }

  static Eigen::Index coordinates(int entries, Index band) { return 2 * entries * (2 * band + 1); }
  static Eigen::Index coordinate(Index band, int entry, Index k) { return 2 * (entry * (2 * band + 1) + k + band); }

  /// Orthonormal basis of the null space of the symmetric positive
  /// semidefinite matrix gram, with a cutoff relative to its largest eigenvalue.
  static Eigen::MatrixXd null_space(const Eigen::MatrixXd& gram) {
    if (gram.rows() == 0) return Eigen::MatrixXd(0, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const double cutoff = 1e-9 * std::max(1.0, eig.eigenvalues().maxCoeff());
    std::vector<Eigen::Index> kept;
    for (Eigen::Index v = 0; v < gram.rows(); ++v)
      if (eig.eigenvalues()(v) <= cutoff) kept.push_back(v);
    Eigen::MatrixXd out(gram.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(kept[c]);
    return out;
  }

  /// Real dimension.
  Eigen::Index dimension() const noexcept { return basis_.cols(); }
  const Eigen::MatrixXd& basis() const noexcept { return basis_; }
  Index band() const noexcept { return band_; }
  int entries() const noexcept { return entries_; }

  /// A random element: uniform [-1,1] weights on the basis, with coordinates
  /// below 1e-13 in magnitude flushed to zero.
  Eigen::VectorXd sample_vector(Rng& rng) const {
    Eigen::VectorXd w(basis_.cols());
    for (Eigen::Index c = 0; c < w.size(); ++c) w(c) = rng.uniform(-1.0, 1.0);
    Eigen::VectorXd v = basis_ * w;
    for (Eigen::Index t = 0; t < v.size(); ++t)
      if (std::abs(v(t)) < 1e-13) v(t) = 0.0;
    return v;
  }

  LaurentSymbol sample_scalar(Rng& rng) const { return to_scalar_symbol(sample_vector(rng)); }
  MatrixSymbol sample_matrix(Rng& rng) const { return to_matrix_symbol(sample_vector(rng)); }

  LaurentSymbol to_scalar_symbol(const Eigen::VectorXd& v, int entry = 0) const {
    return vector_to_symbol(v, band_, entry);
  }

  MatrixSymbol to_matrix_symbol(const Eigen::VectorXd& v) const {
    if (entries_ != 4) throw DomainError("subspace does not hold matrix symbols");
    return {to_scalar_symbol(v, 0), to_scalar_symbol(v, 1), to_scalar_symbol(v, 2), to_scalar_symbol(v, 3)};
  }

  static LaurentSymbol vector_to_symbol(const Eigen::VectorXd& v, Index band, int entry) {
    LaurentSymbol::Coefficients out;
    for (Index k = -band; k <= band; ++k) {
      const Eigen::Index base = coordinate(band, entry, k);
      out.emplace(k, Complex{v(base), v(base + 1)});
    }
    return LaurentSymbol(std::move(out));
  }

 private:
  int entries_;
  Index band_;
  Eigen::MatrixXd basis_;
};

}  // namespace ctsym
