#pragma once

// Reference implementations used only by the tests. Each one works from the
// defining formula directly and shares no code path with the library beyond
// the value types.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "ctsym/conjugation.hpp"
#include "ctsym/symbol.hpp"

namespace oracle {

using ctsym::Complex;
using ctsym::Index;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

// T_phi z^n = P(phi z^n): multiply the Laurent series and keep the analytic part.
inline Mat toeplitz_by_multiplication(const ctsym::LaurentSymbol& phi, int n) {
  Mat t = Mat::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    std::map<Index, Complex> product;
    for (const auto& [k, c] : phi.coefficients()) product[k + col] += c;
    for (const auto& [m, c] : product)
      if (m >= 0 && m < n) t(m, col) = c;
  }
  return t;
}

inline Mat block_toeplitz_by_multiplication(const ctsym::MatrixSymbol& phi, int n) {
  Mat t = Mat::Zero(2 * n, 2 * n);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) t.block(r * n, c * n, n, n) = toeplitz_by_multiplication(phi(r, c), n);
  return t;
}

// (C_sigma x)_{k+m} = conj(x_{k+sigma(m)}) on each length-p block.
inline Vec permutation_action(const std::vector<int>& sigma, const Vec& x) {
  const Index p = static_cast<Index>(sigma.size());
  Vec y(x.size());
  for (Index k = 0; k < x.size(); k += p)
    for (Index m = 0; m < p; ++m) y(k + m) = std::conj(x(k + sigma[static_cast<std::size_t>(m)]));
  return y;
}

// mu conj(f(lambda conj z)) has coefficient mu conj(lambda)^n conj(a_n).
inline Vec mu_lambda_action(Complex mu, Complex lambda, const Vec& x) {
  Vec y(x.size());
  for (Index n = 0; n < x.size(); ++n) y(n) = mu * std::pow(std::conj(lambda), static_cast<double>(n)) * std::conj(x(n));
  return y;
}

// (1/sqrt2) [[C2, X], [X, -C2]] with X = C2 (block C) or X = C1 (block C-tilde).
inline Vec block_action(bool mixed, const Vec& x) {
  const Index n = x.size() / 2;
  const Vec f = x.head(n), g = x.tail(n);
  const std::vector<int> c2{1, 0};
  const Vec c2f = permutation_action(c2, f), c2g = permutation_action(c2, g);
  const Vec xf = mixed ? Vec(f.conjugate()) : c2f;
  const Vec xg = mixed ? Vec(g.conjugate()) : c2g;
  Vec y(2 * n);
  y.head(n) = (c2f + xg) / std::sqrt(2.0);
  y.tail(n) = (xf - c2g) / std::sqrt(2.0);
  return y;
}

inline Vec act(const ctsym::ConjugationSpec& spec, const Vec& x) {
  if (auto sigma = spec.permutation()) return permutation_action(*sigma, x);
  if (const auto* ml = std::get_if<ctsym::MuLambda>(&spec.variant())) return mu_lambda_action(ml->mu, ml->lambda, x);
  return block_action(spec.family() == ctsym::Family::block_ctilde, x);
}

// Dense matrix of the map x -> C T C x - T^* x, assembled column by column
// from the direct actions.
inline Mat defect(const ctsym::ConjugationSpec& spec, const Mat& t) {
  const Index d = t.rows();
  Mat out(d, d);
  for (Index k = 0; k < d; ++k) {
    Vec e = Vec::Zero(d);
    e(k) = 1.0;
    out.col(k) = act(spec, t * act(spec, e)) - t.adjoint() * e;
  }
  return out;
}

inline double residual(const ctsym::ConjugationSpec& spec, const Mat& t) {
  return defect(spec, t).norm() / std::max(1.0, t.norm());
}

// Entry form: with pi(k+m) = k + sigma(m), C T C = T^* reads
// phi(pi(a) - pi(b)) = phi(b - a) for all a, b < n.
inline bool permutation_entry_rule(const ctsym::LaurentSymbol& phi, const std::vector<int>& sigma, int n,
                                   double tol = 1e-12) {
  const int p = static_cast<int>(sigma.size());
  auto pi = [&](int a) { return a - a % p + sigma[static_cast<std::size_t>(a % p)]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (std::abs(phi.coefficient(pi(a) - pi(b)) - phi.coefficient(b - a)) > tol) return false;
  return true;
}

}  // namespace oracle
