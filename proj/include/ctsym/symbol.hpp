#pragma once

// Laurent-polynomial symbols: finitely supported Fourier series on the circle.

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <utility>

#include "ctsym/error.hpp"
#include "ctsym/random.hpp"

namespace ctsym {

using Complex = std::complex<double>;
using Index = std::int64_t;

/// Largest |k| accepted as a Fourier index.
inline constexpr Index kMaxExponent = Index{1} << 30;

/// A trigonometric polynomial sum_k c_k z^k. Canonical: no stored coefficient
/// is exactly zero, so support and bandwidth are well defined.
class LaurentSymbol {
 public:
  using Coefficients = std::map<Index, Complex>;

  LaurentSymbol() = default;

  explicit LaurentSymbol(Coefficients coeffs) : coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      if (it->first > kMaxExponent || it->first < -kMaxExponent)
        throw DomainError("Fourier index out of range: " + std::to_string(it->first));
      if (it->second == Complex{0.0, 0.0})
        it = coeffs_.erase(it);
      else
        ++it;
    }
  }

  static LaurentSymbol constant(Complex c) { return LaurentSymbol({{0, c}}); }
  static LaurentSymbol monomial(Index k, Complex c = 1.0) { return LaurentSymbol({{k, c}}); }

  Complex coefficient(Index k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Complex{} : it->second;
  }
  Complex operator[](Index k) const { return coefficient(k); }

  const Coefficients& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t support_size() const noexcept { return coeffs_.size(); }

  /// max |k| over the support; 0 for the zero symbol.
  Index bandwidth() const noexcept {
    if (coeffs_.empty()) return 0;
    return std::max(std::abs(coeffs_.begin()->first), std::abs(coeffs_.rbegin()->first));
  }

  friend bool operator==(const LaurentSymbol&, const LaurentSymbol&) = default;

  friend LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b) {
    Coefficients out = a.coeffs_;
    for (const auto& [k, c] : b.coeffs_) out[k] += c;
    return LaurentSymbol(std::move(out));
  }
  friend LaurentSymbol operator-(const LaurentSymbol& a) {
    Coefficients out;
    for (const auto& [k, c] : a.coeffs_) out.emplace(k, -c);
    return LaurentSymbol(std::move(out));
  }
  friend LaurentSymbol operator-(const LaurentSymbol& a, const LaurentSymbol& b) { return a + (-b); }
  friend LaurentSymbol operator*(Complex s, const LaurentSymbol& a) {
    Coefficients out;
    for (const auto& [k, c] : a.coeffs_) out.emplace(k, s * c);
    return LaurentSymbol(std::move(out));
  }

 private:
  Coefficients coeffs_;
};

/// A 2x2 matrix symbol [phi1 phi2; phi3 phi4], stored row-major.
class MatrixSymbol {
 public:
  MatrixSymbol() = default;
  MatrixSymbol(LaurentSymbol phi1, LaurentSymbol phi2, LaurentSymbol phi3, LaurentSymbol phi4)
      : entries_{std::move(phi1), std::move(phi2), std::move(phi3), std::move(phi4)} {}

  /// Entry by flat index 0..3 (phi1..phi4).
  const LaurentSymbol& entry(int e) const { return entries_.at(static_cast<std::size_t>(e)); }
  const LaurentSymbol& operator()(int row, int col) const { return entry(2 * row + col); }
  const std::array<LaurentSymbol, 4>& entries() const noexcept { return entries_; }

  Index bandwidth() const noexcept {
    Index b = 0;
    for (const auto& e : entries_) b = std::max(b, e.bandwidth());
    return b;
  }
  bool is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
  }

  friend bool operator==(const MatrixSymbol&, const MatrixSymbol&) = default;

  friend MatrixSymbol operator+(const MatrixSymbol& a, const MatrixSymbol& b) {
    return {a.entries_[0] + b.entries_[0], a.entries_[1] + b.entries_[1], a.entries_[2] + b.entries_[2],
            a.entries_[3] + b.entries_[3]};
  }
  friend MatrixSymbol operator*(Complex s, const MatrixSymbol& a) {
    return {s * a.entries_[0], s * a.entries_[1], s * a.entries_[2], s * a.entries_[3]};
  }

 private:
  std::array<LaurentSymbol, 4> entries_;
};

/// The symbol whose k-th coefficient is conj(phi(-k)); T_phi^* = T_{bar(phi)}.
inline LaurentSymbol bar(const LaurentSymbol& phi) {
  LaurentSymbol::Coefficients out;
  for (const auto& [k, c] : phi.coefficients()) out.emplace(-k, std::conj(c));
  return LaurentSymbol(std::move(out));
}

/// Random symbol with support in [-max_band, max_band]. Each index is kept with
/// probability `density`; real and imaginary parts are uniform on [-1, 1].
inline LaurentSymbol random_symbol(std::uint64_t seed, Index max_band, double density) {
  if (max_band < 0 || max_band > kMaxExponent) throw DomainError("max_band out of range");
  if (!(density > 0.0 && density <= 1.0)) throw DomainError("density must lie in (0, 1]");
  Rng rng(seed);
  LaurentSymbol::Coefficients out;
  for (Index k = -max_band; k <= max_band; ++k) {
    if (!rng.bernoulli(density)) continue;
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    out.emplace(k, Complex{re, im});
  }
  return LaurentSymbol(std::move(out));
}

inline MatrixSymbol random_matrix_symbol(std::uint64_t seed, Index max_band, double density) {
  return {random_symbol(mix_seed(seed ^ 0x11), max_band, density), random_symbol(mix_seed(seed ^ 0x22), max_band, density),
          random_symbol(mix_seed(seed ^ 0x33), max_band, density), random_symbol(mix_seed(seed ^ 0x44), max_band, density)};
}

}  // namespace ctsym
