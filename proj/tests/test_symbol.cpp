#include <gtest/gtest.h>

#include <cstdint>

#include "ctsym/characterization.hpp"
#include "ctsym/symbol.hpp"
#include "ctsym/symbol_io.hpp"

using namespace ctsym;

namespace {

LaurentSymbol sym(std::initializer_list<std::pair<const Index, Complex>> c) { return LaurentSymbol(LaurentSymbol::Coefficients(c)); }

}  // namespace

TEST(Symbol, CanonicalFormDropsExactZeros) {
  const LaurentSymbol phi = sym({{0, 1.0}, {3, 0.0}, {-2, Complex(0, 0)}});
  EXPECT_EQ(phi.support_size(), 1u);
  EXPECT_EQ(phi.bandwidth(), 0);
  EXPECT_TRUE(LaurentSymbol().is_zero());
  EXPECT_EQ(LaurentSymbol().bandwidth(), 0);
}

TEST(Symbol, BandwidthIsLargestAbsoluteIndex) {
  EXPECT_EQ(sym({{-7, 1.0}, {3, 2.0}}).bandwidth(), 7);
  EXPECT_EQ(sym({{5, 1.0}}).bandwidth(), 5);
}

TEST(Symbol, ArithmeticCancelsToCanonical) {
  const LaurentSymbol a = sym({{1, Complex(1, 2)}});
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((a + a).coefficient(1), Complex(2, 4));
  EXPECT_EQ((Complex(0, 1) * a).coefficient(1), Complex(-2, 1));
}

TEST(Parse, Zero) { EXPECT_TRUE(parse_symbol("0").is_zero()); }

TEST(Parse, ConstantAndSymmetricPair) {
  const auto phi = parse_symbol("1 + z^2 + z^-2");
  EXPECT_EQ(phi, sym({{0, 1.0}, {2, 1.0}, {-2, 1.0}}));
}

TEST(Parse, CancellationIsDropped) {
  EXPECT_TRUE(parse_symbol("(1+2i) z^3 + (\xE2\x88\x92" "1\xE2\x88\x92" "2i) z^3").is_zero());
  EXPECT_TRUE(parse_symbol("(1+2i) z^3 + (-1-2i) z^3").is_zero());
}

TEST(Parse, ComplexForms) {
  EXPECT_EQ(parse_symbol("i z"), sym({{1, Complex(0, 1)}}));
  EXPECT_EQ(parse_symbol("2.5i*z^(-4)"), sym({{-4, Complex(0, 2.5)}}));
  EXPECT_EQ(parse_symbol("-z^-1 + 3"), sym({{-1, -1.0}, {0, 3.0}}));
  EXPECT_EQ(parse_symbol("1+2i z^3"), sym({{0, 1.0}, {3, Complex(0, 2)}}));
  EXPECT_EQ(parse_symbol("(1e-3 - 0.5i)z^2"), sym({{2, Complex(1e-3, -0.5)}}));
}

TEST(Parse, ErrorsCarryOffsets) {
  auto offset_of = [](const char* text) -> std::size_t {
    try {
      parse_symbol(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::size_t(-1);
  };
  EXPECT_EQ(offset_of("z^"), 2u);
  EXPECT_EQ(offset_of("1 + + z"), 4u);
  EXPECT_NE(offset_of(""), std::size_t(-1));
  EXPECT_NE(offset_of("(1+2i z"), std::size_t(-1));
  EXPECT_NE(offset_of("z^99999999999999999999"), std::size_t(-1));
  EXPECT_NE(offset_of("z^2000000000"), std::size_t(-1));
}

TEST(Parse, MatrixEntriesAndOffsets) {
  const auto m = parse_matrix_symbol("z; 0; 1 ; z^-2");
  EXPECT_EQ(m.entry(0), sym({{1, 1.0}}));
  EXPECT_TRUE(m.entry(1).is_zero());
  EXPECT_EQ(m.entry(3), sym({{-2, 1.0}}));
  try {
    parse_matrix_symbol("z; 0; z^; 1");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 8u);
  }
  EXPECT_THROW(parse_matrix_symbol("z; 0; 1"), ParseError);
  EXPECT_THROW(parse_matrix_symbol("z; 0; 1; 2; 3"), ParseError);
}

TEST(Bar, Examples) {
  EXPECT_EQ(bar(sym({{1, Complex(0, 1)}})), sym({{-1, Complex(0, -1)}}));
  EXPECT_TRUE(bar(LaurentSymbol()).is_zero());
  EXPECT_EQ(bar(sym({{2, Complex(1, 1)}, {-3, 4.0}})), sym({{-2, Complex(1, -1)}, {3, 4.0}}));
}

TEST(Bar, InvolutionAndBandwidthOnRandomSymbols) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto phi = random_symbol(s, static_cast<Index>(s % 9), 0.3 + 0.7 * static_cast<double>(s % 3) / 2.0);
    EXPECT_EQ(bar(bar(phi)), phi);
    EXPECT_EQ(bar(phi).bandwidth(), phi.bandwidth());
    for (const auto& [k, c] : phi.coefficients()) EXPECT_EQ(bar(phi).coefficient(-k), std::conj(c));
  }
}

TEST(Random, BandZeroIsConstant) {
  const auto phi = random_symbol(11, 0, 1.0);
  EXPECT_EQ(phi.bandwidth(), 0);
  EXPECT_EQ(phi.support_size(), 1u);
}

TEST(Random, DeterministicAndBounded) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    EXPECT_EQ(random_symbol(s, 6, 0.5), random_symbol(s, 6, 0.5));
    const auto phi = random_symbol(s, 6, 0.5);
    for (const auto& [k, c] : phi.coefficients()) {
      EXPECT_LE(std::abs(k), 6);
      EXPECT_LE(std::abs(c.real()), 1.0);
      EXPECT_LE(std::abs(c.imag()), 1.0);
    }
  }
  EXPECT_NE(random_symbol(1, 6, 1.0), random_symbol(2, 6, 1.0));
}

TEST(Random, FullDensityGivesFullSupport) {
  const auto phi = random_symbol(3, 5, 1.0);
  EXPECT_EQ(phi.support_size(), 11u);
  for (Index k = -5; k <= 5; ++k) EXPECT_NE(phi.coefficient(k), Complex(0.0));
}

TEST(Random, DensityIsRoughlyRespected) {
  std::size_t kept = 0;
  for (std::uint64_t s = 0; s < 200; ++s) kept += random_symbol(s, 10, 0.25).support_size();
  const double rate = static_cast<double>(kept) / (200.0 * 21.0);
  EXPECT_NEAR(rate, 0.25, 0.03);
}

TEST(Random, RejectsBadParameters) {
  EXPECT_THROW(random_symbol(0, -1, 1.0), DomainError);
  EXPECT_THROW(random_symbol(0, 2, 0.0), DomainError);
  EXPECT_THROW(random_symbol(0, 2, 1.5), DomainError);
}

TEST(TextRoundTrip, BitExactOnRandomSymbols) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto phi = random_symbol(s, static_cast<Index>(s % 12), 0.6);
    EXPECT_EQ(parse_symbol(to_text(phi)), phi) << to_text(phi);
  }
  const LaurentSymbol odd = sym({{-3, Complex(-0.0, 1e-300)}, {4, Complex(5e-324, -0.0)}, {0, Complex(1e300, 3)}});
  const auto back = parse_symbol(to_text(odd));
  EXPECT_EQ(back, odd);
  EXPECT_TRUE(std::signbit(back.coefficient(-3).real()));
  EXPECT_TRUE(std::signbit(back.coefficient(4).imag()));
}

TEST(JsonRoundTrip, ScalarAndMatrix) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto phi = random_symbol(s, 7, 0.5);
    const nlohmann::json j = phi;
    EXPECT_EQ(j.get<LaurentSymbol>(), phi);
    EXPECT_EQ(nlohmann::json::parse(j.dump()).get<LaurentSymbol>(), phi);
    const auto m = random_matrix_symbol(s, 4, 0.7);
    const nlohmann::json jm = m;
    EXPECT_EQ(nlohmann::json::parse(jm.dump()).get<MatrixSymbol>(), m);
  }
  const nlohmann::json j = sym({{-2, Complex(1, -1)}});
  EXPECT_EQ(j.dump(), R"({"-2":[1.0,-1.0]})");
}

TEST(JsonRoundTrip, RejectsMalformed) {
  EXPECT_THROW(nlohmann::json::parse(R"({"x":[1,2]})").get<LaurentSymbol>(), DomainError);
  EXPECT_THROW(nlohmann::json::parse(R"({"1":[1]})").get<LaurentSymbol>(), DomainError);
  EXPECT_THROW(nlohmann::json::parse(R"([1,2])").get<LaurentSymbol>(), DomainError);
  EXPECT_THROW(nlohmann::json::parse(R"([[{}, {}]])").get<MatrixSymbol>(), DomainError);
}

TEST(Project, Examples) {
  const auto c2 = ConjugationSpec::reversal(2);
  EXPECT_TRUE(project_to_conditions(parse_symbol("z"), c2).is_zero());
  EXPECT_EQ(project_to_conditions(parse_symbol("z^2 + 3z^-2"), ConjugationSpec::transposition(2, 0, 1)),
            sym({{2, 2.0}, {-2, 2.0}}));
  for (const auto& spec : {c2, ConjugationSpec::transposition(4, 0, 2), ConjugationSpec::mu_lambda(1.0, Complex(0, 1))})
    EXPECT_TRUE(project_to_conditions(LaurentSymbol(), spec).is_zero());
}

TEST(Project, MuLambdaOverwritesNegativeSide) {
  const Complex lambda = std::polar(1.0, 0.7);
  const auto out = project_to_conditions(parse_symbol("2z^2 + 5z^-2 + 1 + z^-3"), ConjugationSpec::mu_lambda(1.0, lambda));
  EXPECT_EQ(out.coefficient(2), Complex(2.0));
  EXPECT_NEAR(std::abs(out.coefficient(-2) - 2.0 * lambda * lambda), 0.0, 1e-15);
  EXPECT_EQ(out.coefficient(-3), Complex(0.0));
  EXPECT_EQ(out.coefficient(0), Complex(1.0));
}

TEST(Project, IdempotentExactly) {
  const std::vector<ConjugationSpec> specs{ConjugationSpec::reversal(3), ConjugationSpec::transposition(6, 0, 3),
                                           ConjugationSpec::transposition(5, 1, 4),
                                           ConjugationSpec::mu_lambda(1.0, std::polar(1.0, 2.0))};
  for (const auto& spec : specs)
    for (std::uint64_t s = 0; s < 100; ++s) {
      const auto once = project_to_conditions(random_symbol(s, 12, 0.8), spec);
      EXPECT_EQ(project_to_conditions(once, spec), once);
    }
}

TEST(Project, UnsupportedSpecs) {
  EXPECT_THROW(project_to_conditions(parse_symbol("z"), ConjugationSpec::block_hadamard()), DomainError);
  EXPECT_THROW(project_to_conditions(parse_symbol("z"), ConjugationSpec::transposition(5, 1, 3)), DomainError);
  EXPECT_THROW(project_to_conditions(parse_symbol("z"), ConjugationSpec::general({1, 0, 3, 2})), DomainError);
}
