#include <gtest/gtest.h>

#include <numbers>

#include "ctsym/symbol_io.hpp"
#include "ctsym/symmetry.hpp"
#include "support/oracles.hpp"

using namespace ctsym;

namespace {

std::vector<ConjugationSpec> scalar_specs() {
  return {ConjugationSpec::reversal(1),         ConjugationSpec::reversal(2),
          ConjugationSpec::reversal(4),         ConjugationSpec::transposition(4, 0, 2),
          ConjugationSpec::transposition(5, 1, 3), ConjugationSpec::general({1, 0, 3, 2}),
          ConjugationSpec::mu_lambda(std::polar(1.0, 1.1), std::polar(1.0, 2.0 * std::numbers::pi / 3.0))};
}

}  // namespace

TEST(Residual, ScalarMultipleOfIdentity) {
  const Complex c{0.3, -2.0};
  for (const auto& spec : scalar_specs()) {
    const int n = static_cast<int>(min_truncation(0, spec));
    const auto t = truncate(LaurentSymbol::constant(c), n);
    EXPECT_LE(residual(t, truncated_matrix(spec, n)), 1e-14);
  }
  for (const auto& spec : {ConjugationSpec::block_hadamard(), ConjugationSpec::block_mixed()}) {
    const MatrixSymbol cI{LaurentSymbol::constant(c), {}, {}, LaurentSymbol::constant(c)};
    EXPECT_LE(residual(block_truncate(cI, 8), truncated_matrix(spec, 8)), 1e-14);
  }
}

TEST(Residual, ReversalTwoExamples) {
  const auto c2 = truncated_matrix(ConjugationSpec::reversal(2), 8);
  EXPECT_GT(residual(truncate(parse_symbol("z"), 8), c2), 0.1);
  EXPECT_LE(residual(truncate(parse_symbol("z^2 + z^-2"), 8), c2), 1e-12);
}

TEST(Residual, DimensionMismatch) {
  EXPECT_THROW(residual(truncate(parse_symbol("z"), 6), truncated_matrix(ConjugationSpec::reversal(2), 8)),
               DimensionError);
}

TEST(Residual, MatchesDirectActionOracle) {
  for (const auto& spec : scalar_specs())
    for (std::uint64_t s = 0; s < 40; ++s) {
      const auto phi = random_symbol(s, 4, 0.7);
      const int n = static_cast<int>(min_truncation(4, spec));
      const auto t = truncate(phi, n);
      EXPECT_NEAR(residual(t, truncated_matrix(spec, n)), oracle::residual(spec, t.data()), 1e-13);
    }
  for (const auto& spec : {ConjugationSpec::block_hadamard(), ConjugationSpec::block_mixed()})
    for (std::uint64_t s = 0; s < 40; ++s) {
      const auto t = block_truncate(random_matrix_symbol(s, 3, 0.7), 14);
      EXPECT_NEAR(residual(t, truncated_matrix(spec, 14)), oracle::residual(spec, t.data()), 1e-13);
    }
}

TEST(IsSymmetric, Examples) {
  for (const auto& spec : scalar_specs()) {
    const auto r = is_c_symmetric(LaurentSymbol(), spec);
    EXPECT_TRUE(r.symmetric);
    EXPECT_EQ(r.residual, 0.0);
  }
  EXPECT_TRUE(is_c_symmetric(parse_symbol("z + z^-1"), ConjugationSpec::mu_lambda(1.0, 1.0)).symmetric);
  const MatrixSymbol phi{parse_symbol("z^2 + z^-2"), {}, {}, parse_symbol("z^2 + z^-2")};
  EXPECT_TRUE(is_c_symmetric(phi, ConjugationSpec::block_hadamard()).symmetric);
}

TEST(IsSymmetric, KindAndToleranceChecks) {
  EXPECT_THROW(is_c_symmetric(parse_symbol("z"), ConjugationSpec::block_hadamard()), DomainError);
  EXPECT_THROW(is_c_symmetric(MatrixSymbol{}, ConjugationSpec::reversal(2)), DomainError);
  EXPECT_THROW(is_c_symmetric(parse_symbol("z"), ConjugationSpec::reversal(2), 0.0), DomainError);
  EXPECT_THROW(is_c_symmetric(parse_symbol("z^5000"), ConjugationSpec::reversal(2)), DomainError);
}

TEST(IsSymmetric, ReportJson) {
  const auto r = is_c_symmetric(parse_symbol("z"), ConjugationSpec::reversal(2));
  EXPECT_EQ(r.n_used, 10);
  const nlohmann::json j = r;
  EXPECT_EQ(j["verdict"], "not_symmetric");
  EXPECT_EQ(j["n"], 10);
  EXPECT_EQ(j["tol"], 1e-10);
}

TEST(IsSymmetric, PermutationEntryRuleAgrees) {
  for (const auto& spec : scalar_specs()) {
    auto sigma = spec.permutation();
    if (!sigma) continue;
    SymbolSubspace ks = symmetric_subspace(spec, 6);
    Rng rng(17);
    for (std::uint64_t s = 0; s < 60; ++s) {
      const auto phi = s % 2 ? random_symbol(s, 6, 0.5) : ks.sample_scalar(rng);
      const auto r = is_c_symmetric(phi, spec);
      EXPECT_EQ(r.symmetric, oracle::permutation_entry_rule(phi, *sigma, r.n_used)) << to_text(phi);
    }
  }
}

TEST(IsSymmetric, ScalingAndSumClosure) {
  for (const auto& spec : scalar_specs()) {
    SymbolSubspace ks = symmetric_subspace(spec, 5);
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
      const auto phi = ks.sample_scalar(rng), psi = ks.sample_scalar(rng);
      EXPECT_TRUE(is_c_symmetric(phi, spec).symmetric);
      EXPECT_TRUE(is_c_symmetric(phi + psi, spec).symmetric);
      EXPECT_TRUE(is_c_symmetric(-3.5 * phi, spec).symmetric);
      const auto raw = random_symbol(static_cast<std::uint64_t>(t), 5, 1.0);
      EXPECT_EQ(is_c_symmetric(raw, spec).symmetric, is_c_symmetric(0.25 * raw, spec).symmetric);
    }
  }
}

TEST(IsSymmetric, TruncationStability) {
  for (const auto& spec : scalar_specs()) {
    SymbolSubspace ks = symmetric_subspace(spec, 4);
    Rng rng(8);
    for (std::uint64_t s = 0; s < 30; ++s) {
      const auto phi = s % 2 ? random_symbol(s, 4, 0.6) : ks.sample_scalar(rng);
      const auto base = is_c_symmetric(phi, spec);
      EXPECT_EQ(base.symmetric, is_c_symmetric_at(phi, spec, 2 * base.n_used).symmetric);
    }
  }
}

TEST(Subspace, DimensionsOfKnownFamilies) {
  // C_1: phi(k) = phi(-k); free values phi(0..3)
  EXPECT_EQ(symmetric_subspace(ConjugationSpec::reversal(1), 3).dimension(), 8);
  // C_2 on band 4: multiples of 2 in [-4,4] paired symmetrically: {0}, {2,-2}, {4,-4}
  EXPECT_EQ(symmetric_subspace(ConjugationSpec::reversal(2), 4).dimension(), 6);
  // mu = lambda = 1 is C_1 again
  EXPECT_EQ(symmetric_subspace(ConjugationSpec::mu_lambda(1.0, 1.0), 2).dimension(), 6);
  const auto ks = symmetric_subspace(ConjugationSpec::block_hadamard(), 2);
  Rng rng(1);
  for (int t = 0; t < 10; ++t) EXPECT_TRUE(is_c_symmetric(ks.sample_matrix(rng), ConjugationSpec::block_hadamard()).symmetric);
}
