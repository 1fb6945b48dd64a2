#pragma once

// Seeded cross-validation of the coefficient checkers against the oracle, and
// the two exploration modes for statements without a proven converse.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ctsym/characterization.hpp"
#include "ctsym/conjugation.hpp"
#include "ctsym/random.hpp"
#include "ctsym/subspace.hpp"
#include "ctsym/symbol.hpp"
#include "ctsym/symbol_io.hpp"
#include "ctsym/symmetry.hpp"

namespace ctsym {

using AnySymbol = std::variant<LaurentSymbol, MatrixSymbol>;

inline std::string to_text(const AnySymbol& s) {
  return std::visit([](const auto& x) { return to_text(x); }, s);
}

inline nlohmann::json symbol_json(const AnySymbol& s) {
  return std::visit([](const auto& x) { return nlohmann::json(x); }, s);
}

/// How a trial symbol was produced.
enum class SampleKind {
  raw,        // dense random coefficients
  sparse,     // random coefficients on a random subset of indices
  projected,  // raw symbol projected onto the theorem conditions
  perturbed,  // oracle-symmetric symbol plus one small coefficient change
  kernel,     // random element of the oracle-symmetric subspace
  entrywise   // block only: each entry satisfies the C_2 conditions
};

inline std::string_view kind_name(SampleKind k) {
  switch (k) {
    case SampleKind::raw: return "raw";
    case SampleKind::sparse: return "sparse";
    case SampleKind::projected: return "projected";
    case SampleKind::perturbed: return "perturbed";
    case SampleKind::kernel: return "kernel";
    case SampleKind::entrywise: return "entrywise";
  }
  return "?";
}

struct TrialCase {
  AnySymbol symbol;
  SampleKind kind = SampleKind::raw;
  std::uint64_t seed = 0;
};

/// True when project_to_conditions (or project_block_c) applies to spec.
inline bool has_projection(const ConjugationSpec& spec) {
  switch (spec.family()) {
    case Family::reversal:
    case Family::mu_lambda:
    case Family::block_c: return true;
    case Family::transposition: {
      const auto& t = std::get<Transposition>(spec.variant());
      return transposition_covered(t.p, t.i, t.j);
    }
    case Family::general:
      try {
        project_to_conditions(LaurentSymbol{}, spec);
        return true;
      } catch (const DomainError&) {
        return false;
      }
    case Family::block_ctilde: return false;
  }
  return false;
}

/// Produces trial symbols for one spec; oracle subspaces are cached per band.
class TrialGenerator {
 public:
  explicit TrialGenerator(ConjugationSpec spec, Index max_band = -1) : spec_(std::move(spec)) {
    max_band_ = max_band < 0 ? 3 * static_cast<Index>(spec_.period()) : max_band;
    kinds_ = {SampleKind::raw, SampleKind::sparse, SampleKind::kernel, SampleKind::perturbed};
    if (has_projection(spec_)) kinds_.push_back(SampleKind::projected);
    if (spec_.family() == Family::block_c) kinds_.push_back(SampleKind::entrywise);
  }

  const ConjugationSpec& spec() const noexcept { return spec_; }
  Index max_band() const noexcept { return max_band_; }
  const std::vector<SampleKind>& kinds() const noexcept { return kinds_; }

  TrialCase make(std::uint64_t seed) {
    Rng rng(seed);
    const auto kind = kinds_[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(kinds_.size()) - 1))];
    return make(seed, kind);
  }

  TrialCase make(std::uint64_t seed, SampleKind kind) {
    Rng rng(seed ^ 0x5bd1e995ULL);
    const Index band = rng.uniform_int(0, max_band_);
    return {draw(rng, kind, band), kind, seed};
  }

  const SymbolSubspace& oracle_subspace(Index band) {
    auto it = kernels_.find(band);
    if (it == kernels_.end()) it = kernels_.emplace(band, symmetric_subspace(spec_, band)).first;
    return it->second;
  }

 private:
  AnySymbol random_any(Rng& rng, Index band, double density) const {
    if (spec_.is_block()) return random_matrix_symbol(rng.next(), band, density);
    return random_symbol(rng.next(), band, density);
  }

  AnySymbol draw(Rng& rng, SampleKind kind, Index band) {
    switch (kind) {
      case SampleKind::raw: return random_any(rng, band, 1.0);
      case SampleKind::sparse: return random_any(rng, band, rng.uniform(0.1, 0.6));
      case SampleKind::projected: {
        const AnySymbol s = random_any(rng, band, 1.0);
        if (spec_.is_block()) return project_block_c(std::get<MatrixSymbol>(s));
        return project_to_conditions(std::get<LaurentSymbol>(s), spec_);
      }
      case SampleKind::kernel: return sample_kernel(rng, band);
      case SampleKind::perturbed: {
        const int entries = spec_.is_block() ? 4 : 1;
        const Index nb = std::max<Index>(band, 1);
        const SymbolSubspace& ks = oracle_subspace(nb);
        Eigen::VectorXd v = ks.sample_vector(rng);
        // a small step off the oracle subspace, concentrated on one coefficient
        const int entry = static_cast<int>(rng.uniform_int(0, entries - 1));
        const Index k = rng.uniform_int(-nb, nb);
        const Eigen::Index at = SymbolSubspace::coordinate(nb, entry, k);
        Eigen::VectorXd d = Eigen::VectorXd::Zero(v.size());
        for (Eigen::Index r = 0; r < d.size(); ++r) d(r) = 0.05 * rng.uniform(-1.0, 1.0);
        d(at) += rng.uniform(0.5, 1.0);
        d(at + 1) += rng.uniform(-1.0, 1.0);
        d -= ks.basis() * (ks.basis().transpose() * d);
        if (d.norm() > 1e-9) v += 1e-3 * d / d.norm();
        if (spec_.is_block()) return ks.to_matrix_symbol(v);
        return ks.to_scalar_symbol(v);
      }
      case SampleKind::entrywise: {
        const auto c2 = ConjugationSpec::reversal(2);
        std::array<LaurentSymbol, 4> e;
        for (auto& x : e) x = project_to_conditions(random_symbol(rng.next(), band, 1.0), c2);
        return MatrixSymbol{e[0], e[1], e[2], e[3]};
      }
    }
    throw DomainError("unknown sample kind");
  }

  AnySymbol sample_kernel(Rng& rng, Index band) {
    const SymbolSubspace& ks = oracle_subspace(band);
    if (spec_.is_block()) return ks.sample_matrix(rng);
    return ks.sample_scalar(rng);
  }

  ConjugationSpec spec_;
  Index max_band_ = 0;
  std::vector<SampleKind> kinds_;
  std::map<Index, SymbolSubspace> kernels_;
};

/// Verdicts of one symbol under one spec.
struct TrialOutcome {
  std::uint64_t seed = 0;
  SampleKind kind = SampleKind::raw;
  double residual = 0.0;
  bool oracle = false;
  bool conditions = false;
  std::optional<bool> raw;
  ConditionMode mode = ConditionMode::iff;
  bool agree = false;
};

/// iff: conditions (and raw relations, when present) match the oracle.
/// necessary_only: an oracle-symmetric symbol satisfies the conditions.
/// conjecture: the raw relations match the oracle; the theorem-form verdict
/// is recorded but not judged.
inline bool verdicts_agree(bool oracle, const ConditionReport& rep, std::optional<bool> raw) {
  switch (rep.mode) {
    case ConditionMode::iff: return rep.satisfied == oracle && (!raw || *raw == oracle);
    case ConditionMode::necessary_only: return !oracle || rep.satisfied;
    case ConditionMode::conjecture: return raw && *raw == oracle;
  }
  return false;
}

/// Raw relation verdict for permutation families; empty for the others.
inline std::optional<bool> raw_verdict(const LaurentSymbol& phi, const ConjugationSpec& spec) {
  if (const auto* t = std::get_if<Transposition>(&spec.variant()))
    return relations_hold(raw_relations_transposition(t->p, t->i, t->j, phi.bandwidth()), phi);
  if (auto sigma = spec.permutation()) return relations_hold(raw_relations_permutation(*sigma, phi.bandwidth()), phi);
  return std::nullopt;
}

inline TrialOutcome equivalence_trial(const AnySymbol& symbol, const ConjugationSpec& spec,
                                      double tol = kDefaultSymmetryTol) {
  TrialOutcome out;
  const auto rep = std::visit([&](const auto& s) { return check_conditions(s, spec); }, symbol);
  const auto sym = std::visit([&](const auto& s) { return is_c_symmetric(s, spec, tol); }, symbol);
  if (const auto* phi = std::get_if<LaurentSymbol>(&symbol)) out.raw = rep.raw_satisfied ? rep.raw_satisfied : raw_verdict(*phi, spec);
  out.residual = sym.residual;
  out.oracle = sym.symmetric;
  out.conditions = rep.satisfied;
  out.mode = rep.mode;
  out.agree = verdicts_agree(out.oracle, rep, out.raw);
  return out;
}

inline TrialOutcome equivalence_trial(const TrialCase& c, const ConjugationSpec& spec, double tol = kDefaultSymmetryTol) {
  TrialOutcome out = equivalence_trial(c.symbol, spec, tol);
  out.seed = c.seed;
  out.kind = c.kind;
  return out;
}

struct TrialSummary {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::vector<std::uint64_t> disagreements;
  std::map<std::string, std::size_t> kinds;
  std::size_t oracle_symmetric = 0;
};

inline void to_json(nlohmann::json& j, const TrialSummary& s) {
  j = {{"trials", s.trials},
       {"agreements", s.agreements},
       {"disagreements", s.disagreements},
       {"oracle_symmetric", s.oracle_symmetric},
       {"kinds", s.kinds}};
}

/// Trial t uses seed base_seed + t.
inline TrialSummary run_trials(const ConjugationSpec& spec, std::size_t trials, std::uint64_t base_seed,
                               Index max_band = -1, double tol = kDefaultSymmetryTol) {
  TrialGenerator gen(spec, max_band);
  TrialSummary sum;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto c = gen.make(base_seed + t);
    const auto o = equivalence_trial(c, spec, tol);
    ++sum.trials;
    ++sum.kinds[std::string(kind_name(c.kind))];
    if (o.oracle) ++sum.oracle_symmetric;
    if (o.agree) ++sum.agreements;
    else sum.disagreements.push_back(c.seed);
  }
  return sum;
}

/// Transposition outside the theorem cases: symbols where the theorem-form
/// verdict differs from the raw-relation or oracle verdict.
inline nlohmann::json explore_transposition(const ConjugationSpec& spec, std::size_t trials, std::uint64_t base_seed,
                                            Index max_band = -1, double tol = kDefaultSymmetryTol) {
  const auto* t = std::get_if<Transposition>(&spec.variant());
  if (!t || transposition_covered(t->p, t->i, t->j))
    throw DomainError("transposition exploration needs a transposition outside the theorem cases");
  TrialGenerator gen(spec, max_band);
  nlohmann::json candidates = nlohmann::json::array();
  std::size_t theorem_true = 0, oracle_true = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto c = gen.make(base_seed + k);
    const auto& phi = std::get<LaurentSymbol>(c.symbol);
    const auto rep = check_mainthm(phi, t->p, t->i, t->j);
    const auto sym = is_c_symmetric(phi, spec, tol);
    theorem_true += rep.satisfied;
    oracle_true += sym.symmetric;
    if (rep.satisfied != *rep.raw_satisfied || rep.satisfied != sym.symmetric)
      candidates.push_back({{"seed", c.seed},
                            {"kind", kind_name(c.kind)},
                            {"symbol", to_text(c.symbol)},
                            {"theorem", rep.satisfied},
                            {"raw", *rep.raw_satisfied},
                            {"oracle", sym.symmetric},
                            {"residual", sym.residual}});
  }
  return {{"mode", "transposition_conjecture"},
          {"trials", trials},
          {"theorem_satisfied", theorem_true},
          {"oracle_symmetric", oracle_true},
          {"candidates", std::move(candidates)}};
}

/// C-tilde sufficiency: random symbols satisfying the printed conditions
/// whose oracle residual exceeds tol.
inline nlohmann::json explore_block_ctilde(std::size_t trials, std::uint64_t base_seed, Index max_band = 6,
                                           double tol = kDefaultSymmetryTol) {
  const auto spec = ConjugationSpec::block_mixed();
  std::map<Index, SymbolSubspace> spaces;
  nlohmann::json candidates = nlohmann::json::array();
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t seed = base_seed + k;
    Rng rng(seed);
    const Index band = rng.uniform_int(0, max_band);
    auto it = spaces.find(band);
    if (it == spaces.end())
      it = spaces.emplace(band, relation_subspace(block_ctilde_printed_relations(band), 4, band)).first;
    const MatrixSymbol phi = it->second.sample_matrix(rng);
    if (phi.is_zero()) continue;
    ++nonzero;
    const auto sym = is_c_symmetric(phi, spec, tol);
    if (!sym.symmetric)
      candidates.push_back({{"seed", seed}, {"symbol", to_text(phi)}, {"residual", sym.residual}});
  }
  return {{"mode", "block_ctilde_sufficiency"},
          {"trials", trials},
          {"nonzero_samples", nonzero},
          {"candidates", std::move(candidates)}};
}

/// Up to count distinct multiples of period in [period, max_n], spread evenly.
inline std::vector<int> axiom_sizes(int period, int max_n = 120, int count = 20) {
  const int top = max_n / period;
  std::vector<int> out;
  for (int t = 1; t <= count; ++t) {
    const int m = std::max(1, (t * top + count - 1) / count);
    if (out.empty() || out.back() != m * period) out.push_back(m * period);
  }
  return out;
}

}  // namespace ctsym
