#pragma once

// Conjugation families on H^2 and H^2(C^2), their finite truncations as
// antilinear operators x -> A conj(x), and the conjugation axiom checks.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ctsym/error.hpp"
#include "ctsym/random.hpp"
#include "ctsym/symbol.hpp"

namespace ctsym {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Unit-modulus tolerance for mu and lambda.
inline constexpr double kUnitModulusTol = 1e-12;
/// Deviation allowed by verify_axioms.
inline constexpr double kAxiomTol = 1e-13;

/// C_sigma: conjugate coefficients, then permute each length-p block by sigma.
struct GeneralPermutation {
  std::vector<int> sigma;
  friend bool operator==(const GeneralPermutation&, const GeneralPermutation&) = default;
};
/// C_p^{i,j}: sigma swaps residues i and j modulo p.
struct Transposition {
  int p = 0, i = 0, j = 0;
  friend bool operator==(const Transposition&, const Transposition&) = default;
};
/// C_n: sigma reverses each block of n coefficients.
struct Reversal {
  int n = 0;
  friend bool operator==(const Reversal&, const Reversal&) = default;
};
/// C_{mu,lambda} f(z) = mu conj(f(lambda conj(z))).
struct MuLambda {
  Complex mu{1.0, 0.0}, lambda{1.0, 0.0};
  friend bool operator==(const MuLambda&, const MuLambda&) = default;
};
/// (1/sqrt2) [[C_2, C_2], [C_2, -C_2]] on H^2(C^2).
struct BlockHadamard {
  friend bool operator==(const BlockHadamard&, const BlockHadamard&) = default;
};
/// (1/sqrt2) [[C_2, C_1], [C_1, -C_2]] on H^2(C^2).
struct BlockMixed {
  friend bool operator==(const BlockMixed&, const BlockMixed&) = default;
};

enum class Family { general, transposition, reversal, mu_lambda, block_c, block_ctilde };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::general: return "general";
    case Family::transposition: return "transposition";
    case Family::reversal: return "reversal";
    case Family::mu_lambda: return "mulambda";
    case Family::block_c: return "block_c";
    case Family::block_ctilde: return "block_ctilde";
  }
  return "?";
}

/// A validated description of one conjugation. Construct through the factories.
class ConjugationSpec {
 public:
  using Variant = std::variant<GeneralPermutation, Transposition, Reversal, MuLambda, BlockHadamard, BlockMixed>;

  static ConjugationSpec general(std::vector<int> sigma) {
    const int p = static_cast<int>(sigma.size());
    if (p < 1) throw DomainError("sigma must act on at least one symbol");
    std::vector<bool> hit(sigma.size(), false);
    for (int m = 0; m < p; ++m) {
      const int s = sigma[static_cast<std::size_t>(m)];
      if (s < 0 || s >= p || hit[static_cast<std::size_t>(s)]) throw DomainError("sigma is not a permutation");
      hit[static_cast<std::size_t>(s)] = true;
    }
    for (int m = 0; m < p; ++m)
      if (sigma[static_cast<std::size_t>(sigma[static_cast<std::size_t>(m)])] != m)
        throw DomainError("sigma is not an involution");
    return ConjugationSpec(GeneralPermutation{std::move(sigma)});
  }

  static ConjugationSpec transposition(int p, int i, int j) {
    if (!(0 <= i && i < j && j < p)) throw DomainError("transposition requires 0 <= i < j < p");
    return ConjugationSpec(Transposition{p, i, j});
  }

  static ConjugationSpec reversal(int n) {
    if (n < 1) throw DomainError("reversal requires n >= 1");
    return ConjugationSpec(Reversal{n});
  }

  static ConjugationSpec mu_lambda(Complex mu, Complex lambda) {
    return ConjugationSpec(MuLambda{normalize_unit(mu, "mu"), normalize_unit(lambda, "lambda")});
  }

  static ConjugationSpec block_hadamard() { return ConjugationSpec(BlockHadamard{}); }
  static ConjugationSpec block_mixed() { return ConjugationSpec(BlockMixed{}); }

  const Variant& variant() const noexcept { return v_; }

  Family family() const noexcept { return static_cast<Family>(v_.index()); }
  std::string_view name() const { return family_name(family()); }

  bool is_block() const noexcept { return family() == Family::block_c || family() == Family::block_ctilde; }

  /// Block length that a truncation order must be a multiple of.
  int period() const {
    return std::visit(
        [](const auto& s) -> int {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, GeneralPermutation>) return static_cast<int>(s.sigma.size());
          else if constexpr (std::is_same_v<T, Transposition>) return s.p;
          else if constexpr (std::is_same_v<T, Reversal>) return s.n;
          else if constexpr (std::is_same_v<T, MuLambda>) return 1;
          else return 2;
        },
        v_);
  }

  /// sigma for the three permutation families; empty otherwise.
  std::optional<std::vector<int>> permutation() const {
    if (const auto* g = std::get_if<GeneralPermutation>(&v_)) return g->sigma;
    if (const auto* t = std::get_if<Transposition>(&v_)) {
      std::vector<int> s(static_cast<std::size_t>(t->p));
      for (int m = 0; m < t->p; ++m) s[static_cast<std::size_t>(m)] = m;
      std::swap(s[static_cast<std::size_t>(t->i)], s[static_cast<std::size_t>(t->j)]);
      return s;
    }
    if (const auto* r = std::get_if<Reversal>(&v_)) {
      std::vector<int> s(static_cast<std::size_t>(r->n));
      for (int m = 0; m < r->n; ++m) s[static_cast<std::size_t>(m)] = r->n - 1 - m;
      return s;
    }
    return std::nullopt;
  }

  /// The same conjugation written as a GeneralPermutation (permutation families only).
  ConjugationSpec as_general() const {
    auto s = permutation();
    if (!s) throw DomainError(std::string(name()) + " is not a permutation family");
    return general(std::move(*s));
  }

  friend bool operator==(const ConjugationSpec&, const ConjugationSpec&) = default;

 private:
  explicit ConjugationSpec(Variant v) : v_(std::move(v)) {}

  static Complex normalize_unit(Complex z, const char* what) {
    const double r = std::abs(z);
    if (!(std::abs(r - 1.0) <= kUnitModulusTol)) throw DomainError(std::string(what) + " must have unit modulus");
    return r == 1.0 ? z : z / r;
  }

  Variant v_;
};

/// The finite matrix of a conjugation: C x = A conj(x).
class AntilinearOperator {
 public:
  explicit AntilinearOperator(ComplexMatrix a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols()) throw DimensionError("antilinear operator matrix must be square");
  }

  const ComplexMatrix& matrix() const noexcept { return a_; }
  Eigen::Index dim() const noexcept { return a_.rows(); }

 private:
  ComplexMatrix a_;
};

namespace detail {

inline ComplexMatrix permutation_block_matrix(const std::vector<int>& sigma, int n) {
  const int p = static_cast<int>(sigma.size());
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; k += p)
    for (int m = 0; m < p; ++m) a(k + m, k + sigma[static_cast<std::size_t>(m)]) = 1.0;
  return a;
}

}  // namespace detail

/// Truncation of the conjugation to span{z^0..z^{N-1}} (or its C^2 analogue,
/// ordered as all f-coordinates then all g-coordinates). The period of the
/// spec must divide N, which makes the truncation commute with C exactly.
inline AntilinearOperator truncated_matrix(const ConjugationSpec& spec, int n) {
  if (n < 1) throw DomainError("truncation order must be >= 1");
  if (n % spec.period() != 0)
    throw DomainError("truncation order " + std::to_string(n) + " is not a multiple of the period " +
                      std::to_string(spec.period()));
  if (auto sigma = spec.permutation()) return AntilinearOperator(detail::permutation_block_matrix(*sigma, n));

  if (const auto* ml = std::get_if<MuLambda>(&spec.variant())) {
    ComplexMatrix a = ComplexMatrix::Zero(n, n);
    Complex w = ml->mu;
    const Complex step = std::conj(ml->lambda);
    for (int k = 0; k < n; ++k) {
      a(k, k) = w;
      // renormalize so the modulus error does not grow with k
      w *= step;
      w /= std::abs(w);
    }
    return AntilinearOperator(std::move(a));
  }

  const double s = 1.0 / std::sqrt(2.0);
  const ComplexMatrix c2 = detail::permutation_block_matrix({1, 0}, n);
  const ComplexMatrix c1 = ComplexMatrix::Identity(n, n);
  const bool mixed = spec.family() == Family::block_ctilde;
  ComplexMatrix a(2 * n, 2 * n);
  a.topLeftCorner(n, n) = s * c2;
  a.topRightCorner(n, n) = s * (mixed ? c1 : c2);
  a.bottomLeftCorner(n, n) = s * (mixed ? c1 : c2);
  a.bottomRightCorner(n, n) = -s * c2;
  return AntilinearOperator(std::move(a));
}

/// C x = A conj(x).
inline ComplexVector apply(const AntilinearOperator& op, const ComplexVector& x) {
  if (x.size() != op.dim())
    throw DimensionError("vector of length " + std::to_string(x.size()) + " applied to operator of dimension " +
                         std::to_string(op.dim()));
  return op.matrix() * x.conjugate();
}

struct AxiomReport {
  bool ok = false;
  Eigen::Index dim = 0;
  /// max entry of |A conj(A) - I|
  double involution_deviation = 0.0;
  /// max over probes of | ||Cx|| - ||x|| | / ||x||
  double isometry_deviation = 0.0;
  /// max over probes of ||C(ax+by) - conj(a)Cx - conj(b)Cy|| / (|a|||x|| + |b|||y||)
  double antilinearity_deviation = 0.0;
};

inline ComplexVector random_probe(Rng& rng, Eigen::Index n) {
  ComplexVector x(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    x(k) = Complex{re, im};
  }
  return x;
}

/// Checks the three conjugation axioms on the truncation of order N.
inline AxiomReport verify_axioms(const ConjugationSpec& spec, int n, int probes = 50, std::uint64_t seed = 0) {
  const AntilinearOperator op = truncated_matrix(spec, n);
  const ComplexMatrix& a = op.matrix();
  AxiomReport r;
  r.dim = op.dim();
  r.involution_deviation =
      (a * a.conjugate() - ComplexMatrix::Identity(r.dim, r.dim)).cwiseAbs().maxCoeff();

  Rng rng(seed);
  for (int t = 0; t < probes; ++t) {
    const ComplexVector x = random_probe(rng, r.dim);
    const ComplexVector y = random_probe(rng, r.dim);
    const Complex alpha{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const Complex beta{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const ComplexVector cx = apply(op, x);
    const ComplexVector cy = apply(op, y);
    r.isometry_deviation = std::max(r.isometry_deviation, std::abs(cx.norm() - x.norm()) / x.norm());
    const ComplexVector lhs = ctsym::apply(op, ComplexVector(alpha * x + beta * y));
    const ComplexVector rhs = std::conj(alpha) * cx + std::conj(beta) * cy;
    const double scale = std::abs(alpha) * x.norm() + std::abs(beta) * y.norm();
    r.antilinearity_deviation = std::max(r.antilinearity_deviation, (lhs - rhs).norm() / scale);
  }
  r.ok = r.involution_deviation <= kAxiomTol && r.isometry_deviation <= kAxiomTol &&
         r.antilinearity_deviation <= kAxiomTol;
  return r;
}

}  // namespace ctsym
