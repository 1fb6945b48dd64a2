#pragma once

// Finite sections of Toeplitz and 2x2 block Toeplitz operators.

#include <Eigen/Dense>

#include <cstdint>
#include <string>

#include "json.hpp"

#include "ctsym/conjugation.hpp"
#include "ctsym/error.hpp"
#include "ctsym/symbol.hpp"

namespace ctsym {

/// Largest truncation order accepted by the dense builders.
inline constexpr int kMaxTruncationOrder = 4096;

enum class ToeplitzKind { scalar, block };

/// The compression of T_phi (or T_Phi) to the first N basis vectors.
/// Scalar: entry (m, n) is phi(m - n). Block: the 2x2 grid
/// [[T_phi1, T_phi2], [T_phi3, T_phi4]] of N x N sections.
class TruncatedToeplitz {
 public:
  TruncatedToeplitz(ComplexMatrix data, int order, ToeplitzKind kind)
      : data_(std::move(data)), order_(order), kind_(kind) {}

  const ComplexMatrix& data() const noexcept { return data_; }
  int order() const noexcept { return order_; }
  ToeplitzKind kind() const noexcept { return kind_; }
  Eigen::Index dim() const noexcept { return data_.rows(); }

 private:
  ComplexMatrix data_;
  int order_;
  ToeplitzKind kind_;
};

namespace detail {

inline void check_order(int n) {
  if (n < 1) throw DomainError("truncation order must be >= 1");
  if (n > kMaxTruncationOrder) throw DomainError("truncation order " + std::to_string(n) + " exceeds dense limit");
}

inline void fill_toeplitz(Eigen::Ref<ComplexMatrix> out, const LaurentSymbol& phi) {
  const Index n = out.rows();
  for (const auto& [k, c] : phi.coefficients()) {
    if (k >= n || -k >= n) continue;
    // diagonal m - col = k
    for (Index col = std::max<Index>(0, -k); col < n && col + k < n; ++col) out(col + k, col) = c;
  }
}

}  // namespace detail

inline TruncatedToeplitz truncate(const LaurentSymbol& phi, int n) {
  detail::check_order(n);
  ComplexMatrix data = ComplexMatrix::Zero(n, n);
  detail::fill_toeplitz(data, phi);
  return {std::move(data), n, ToeplitzKind::scalar};
}

inline TruncatedToeplitz block_truncate(const MatrixSymbol& phi, int n) {
  detail::check_order(n);
  ComplexMatrix data = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) detail::fill_toeplitz(data.block(r * n, c * n, n, n), phi(r, c));
  return {std::move(data), n, ToeplitzKind::block};
}

/// Conjugate transpose; for scalar sections this equals truncate(bar(phi), N).
inline TruncatedToeplitz adjoint(const TruncatedToeplitz& t) {
  return {t.data().adjoint(), t.order(), t.kind()};
}

/// Smallest N that is a multiple of the spec's period with N >= 2 band + 4 period.
inline std::int64_t min_truncation(Index band, const ConjugationSpec& spec) {
  if (band < 0) throw DomainError("band must be >= 0");
  const std::int64_t period = spec.period();
  const std::int64_t floor = 2 * band + 4 * period;
  return (floor + period - 1) / period * period;
}

/// {"rows": R, "cols": C, "data": [[re, im], ...]} in row-major order.
inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

}  // namespace ctsym
