#pragma once

// The ctsym command-line front end. run_cli is separate from main so the
// tests can drive it with captured streams.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ctsym/characterization.hpp"
#include "ctsym/conjugation_io.hpp"
#include "ctsym/symbol_io.hpp"
#include "ctsym/symmetry.hpp"
#include "ctsym/trials.hpp"

namespace ctsym::cli {

enum ExitCode : int {
  kSymmetric = 0,
  kNotSymmetric = 1,
  kDisagreement = 2,
  kInputError = 3,
  kInternalError = 4,
};

/// Bad command-line input; reported on stderr with exit code 3.
class InputError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::optional<std::string> symbol_text;
  std::optional<std::string> matrix_text;
  std::optional<std::string> symbol_file;
  std::optional<std::string> spec_text;
  std::optional<std::string> spec_file;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  double tol = kDefaultSymmetryTol;
  std::optional<std::string> output;
  Index max_band = -1;
  double density = 1.0;
  std::optional<int> order;
  int probes = 50;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ConjugationSpec load_spec(const RunConfig& c) {
  if (c.spec_text && c.spec_file) throw InputError("give only one of --spec and --spec-file");
  if (c.spec_text) {
    try {
      return parse_spec(*c.spec_text);
    } catch (const ParseError& e) {
      throw InputError("--spec: " + std::string(e.what()));
    } catch (const DomainError& e) {
      throw InputError("--spec: " + std::string(e.what()));
    }
  }
  if (c.spec_file) {
    try {
      return spec_from_json(nlohmann::json::parse(read_file(*c.spec_file)));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(*c.spec_file + ": " + e.what());
    } catch (const DomainError& e) {
      throw InputError(*c.spec_file + ": " + e.what());
    }
  }
  throw InputError("a conjugation is required (--spec or --spec-file)");
}

// A symbol file holds JSON (an object for a scalar symbol, a 2x2 array for a
// matrix symbol) or the text syntax, with ';' separating matrix entries.
inline AnySymbol load_symbol(const RunConfig& c) {
  const int given = !!c.symbol_text + !!c.matrix_text + !!c.symbol_file;
  if (given != 1) throw InputError("give exactly one of --symbol, --matrix and --symbol-file");
  auto guarded = [](const std::string& source, auto&& fn) -> AnySymbol {
    try {
      return fn();
    } catch (const ParseError& e) {
      throw InputError(source + ": " + e.what());
    } catch (const DomainError& e) {
      throw InputError(source + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw InputError(source + ": " + e.what());
    }
  };
  if (c.symbol_text) return guarded("--symbol", [&] { return AnySymbol(parse_symbol(*c.symbol_text)); });
  if (c.matrix_text) return guarded("--matrix", [&] { return AnySymbol(parse_matrix_symbol(*c.matrix_text)); });
  const std::string text = read_file(*c.symbol_file);
  return guarded(*c.symbol_file, [&]() -> AnySymbol {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
      const auto j = nlohmann::json::parse(text);
      if (j.is_array()) return j.get<MatrixSymbol>();
      return j.get<LaurentSymbol>();
    }
    if (text.find(';') != std::string::npos) return parse_matrix_symbol(text);
    return parse_symbol(text);
  });
}

inline void check_kind(const AnySymbol& s, const ConjugationSpec& spec) {
  if (spec.is_block() != std::holds_alternative<MatrixSymbol>(s))
    throw InputError(spec.is_block() ? "block conjugation needs a matrix symbol" : "scalar conjugation needs a scalar symbol");
}

inline void check_config(const RunConfig& c) {
  if (c.trials < 1) throw InputError("--trials must be >= 1");
  if (!(c.tol > 0.0)) throw InputError("--tol must be > 0");
  if (!(c.density > 0.0 && c.density <= 1.0)) throw InputError("--density must lie in (0, 1]");
}

inline nlohmann::json spec_json(const ConjugationSpec& spec) {
  nlohmann::json j = spec;
  return j;
}

}  // namespace detail

inline int cmd_check(const RunConfig& c, nlohmann::json& out) {
  const auto spec = detail::load_spec(c);
  const auto symbol = detail::load_symbol(c);
  detail::check_kind(symbol, spec);
  const auto sym = std::visit([&](const auto& s) { return is_c_symmetric(s, spec, c.tol); }, symbol);
  const auto rep = std::visit([&](const auto& s) { return check_conditions(s, spec); }, symbol);
  std::optional<bool> raw = rep.raw_satisfied;
  if (!raw)
    if (const auto* phi = std::get_if<LaurentSymbol>(&symbol)) raw = raw_verdict(*phi, spec);
  const bool agree = verdicts_agree(sym.symmetric, rep, raw);
  out = {{"command", "check"},
         {"spec", detail::spec_json(spec)},
         {"symbol", symbol_json(symbol)},
         {"symmetry", sym},
         {"conditions", rep},
         {"agreement", agree}};
  if (raw) out["raw_relations_satisfied"] = *raw;
  if (!agree) return kDisagreement;
  return sym.symmetric ? kSymmetric : kNotSymmetric;
}

inline int cmd_verify(const RunConfig& c, nlohmann::json& out) {
  const auto spec = detail::load_spec(c);
  if (c.probes < 1) throw InputError("--probes must be >= 1");
  std::vector<int> sizes;
  if (c.order) {
    if (*c.order < 1 || *c.order % spec.period() != 0)
      throw InputError("--n must be a positive multiple of the period " + std::to_string(spec.period()));
    sizes.push_back(*c.order);
  } else {
    sizes = axiom_sizes(spec.period());
  }
  bool ok = true;
  nlohmann::json rows = nlohmann::json::array();
  for (int n : sizes) {
    const auto r = verify_axioms(spec, n, c.probes, c.seed);
    ok = ok && r.ok;
    rows.push_back({{"n", n},
                    {"dim", r.dim},
                    {"ok", r.ok},
                    {"involution_deviation", r.involution_deviation},
                    {"isometry_deviation", r.isometry_deviation},
                    {"antilinearity_deviation", r.antilinearity_deviation}});
  }
  out = {{"command", "verify"}, {"spec", detail::spec_json(spec)}, {"ok", ok}, {"sizes", std::move(rows)}};
  return ok ? 0 : 1;
}

inline int cmd_random_test(const RunConfig& c, nlohmann::json& out) {
  const auto spec = detail::load_spec(c);
  const auto sum = run_trials(spec, c.trials, c.seed, c.max_band, c.tol);
  out = {{"command", "random-test"},
         {"spec", detail::spec_json(spec)},
         {"seed", c.seed},
         {"max_band", c.max_band < 0 ? 3 * static_cast<Index>(spec.period()) : c.max_band},
         {"tol", c.tol},
         {"summary", sum}};
  return sum.disagreements.empty() ? 0 : kDisagreement;
}

inline int cmd_explore(const RunConfig& c, nlohmann::json& out) {
  const auto spec = detail::load_spec(c);
  nlohmann::json report;
  if (spec.family() == Family::block_ctilde) {
    report = explore_block_ctilde(c.trials, c.seed, c.max_band < 0 ? 6 : c.max_band, c.tol);
  } else if (const auto* t = std::get_if<Transposition>(&spec.variant());
             t && !transposition_covered(t->p, t->i, t->j)) {
    report = explore_transposition(spec, c.trials, c.seed, c.max_band, c.tol);
  } else {
    throw InputError("explore needs block_ctilde or a transposition outside the theorem cases");
  }
  out = {{"command", "explore"}, {"spec", detail::spec_json(spec)}, {"seed", c.seed}, {"report", std::move(report)}};
  return 0;
}

/// A random symbol satisfying the spec's coefficient conditions.
inline AnySymbol generate(const ConjugationSpec& spec, std::uint64_t seed, Index band, double density) {
  switch (spec.family()) {
    case Family::block_c: return project_block_c(random_matrix_symbol(seed, band, density));
    case Family::block_ctilde: {
      Rng rng(seed);
      return relation_subspace(block_ctilde_printed_relations(band), 4, band).sample_matrix(rng);
    }
    case Family::mu_lambda: return project_to_conditions(random_symbol(seed, band, density), spec);
    default: {
      // theorem-form conditions for the permutation's period, proven or not
      const auto phi = random_symbol(seed, band, density);
      return project_to_conditions(phi, ConjugationSpec::reversal(spec.period()));
    }
  }
}

inline int cmd_gen(const RunConfig& c, nlohmann::json& out) {
  const auto spec = detail::load_spec(c);
  const Index band = c.max_band < 0 ? 3 * static_cast<Index>(spec.period()) : c.max_band;
  const AnySymbol s = generate(spec, c.seed, band, c.density);
  const auto rep = std::visit([&](const auto& x) { return check_conditions(x, spec); }, s);
  const auto sym = std::visit([&](const auto& x) { return is_c_symmetric(x, spec, c.tol); }, s);
  out = {{"command", "gen"},
         {"spec", detail::spec_json(spec)},
         {"seed", c.seed},
         {"max_band", band},
         {"symbol", symbol_json(s)},
         {"text", to_text(s)},
         {"conditions_satisfied", rep.satisfied},
         {"symmetry", sym}};
  return 0;
}

/// Parse args (without the program name) and run one command. JSON goes to
/// out (or --output); diagnostics go to err.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("CTSYM_TOL")) {
    char* end = nullptr;
    cfg.tol = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(cfg.tol > 0.0)) {
      err << "error: CTSYM_TOL must be a positive number\n";
      return kInputError;
    }
  }

  CLI::App app{"Complex symmetry of Toeplitz operators under conjugations", "ctsym"};
  app.require_subcommand(1);
  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec_text, "conjugation, e.g. reversal:3, transposition:4:0:2, block_c");
    sub->add_option("--spec-file", cfg.spec_file, "conjugation as JSON");
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "oracle residual tolerance (default 1e-10 or $CTSYM_TOL)");
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--output", cfg.output, "write JSON here instead of stdout"); };

  auto* check = app.add_subcommand("check", "oracle verdict and coefficient conditions for one symbol");
  add_spec(check);
  check->add_option("--symbol", cfg.symbol_text, "scalar symbol text, e.g. \"z^2 + z^-2\"");
  check->add_option("--matrix", cfg.matrix_text, "matrix symbol text \"phi1; phi2; phi3; phi4\"");
  check->add_option("--symbol-file", cfg.symbol_file, "symbol as JSON or text");
  add_tol(check);
  add_out(check);

  auto* verify = app.add_subcommand("verify", "conjugation axioms on truncations");
  add_spec(verify);
  verify->add_option("--n", cfg.order, "single truncation order (default: 20 sizes up to 120)");
  verify->add_option("--probes", cfg.probes, "random probe vectors per size");
  verify->add_option("--seed", cfg.seed);
  add_out(verify);

  auto* random = app.add_subcommand("random-test", "seeded equivalence trials against the oracle");
  add_spec(random);
  random->add_option("--trials", cfg.trials);
  random->add_option("--seed", cfg.seed);
  random->add_option("--max-band", cfg.max_band, "largest bandwidth (default 3 * period)");
  add_tol(random);
  add_out(random);

  auto* explore = app.add_subcommand("explore", "search for counterexamples where no converse is proven");
  add_spec(explore);
  explore->add_option("--trials", cfg.trials);
  explore->add_option("--seed", cfg.seed);
  explore->add_option("--max-band", cfg.max_band);
  add_tol(explore);
  add_out(explore);

  auto* gen = app.add_subcommand("gen", "random symbol satisfying the coefficient conditions");
  add_spec(gen);
  gen->add_option("--seed", cfg.seed);
  gen->add_option("--max-band", cfg.max_band);
  gen->add_option("--density", cfg.density);
  add_tol(gen);
  add_out(gen);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  nlohmann::json result;
  int code = 0;
  try {
    detail::check_config(cfg);
    if (cfg.command == "check") code = cmd_check(cfg, result);
    else if (cfg.command == "verify") code = cmd_verify(cfg, result);
    else if (cfg.command == "random-test") code = cmd_random_test(cfg, result);
    else if (cfg.command == "explore") code = cmd_explore(cfg, result);
    else code = cmd_gen(cfg, result);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }

  const std::string text = result.dump(2) + "\n";
  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << *cfg.output << "\n";
      return kInputError;
    }
    file << text;
  } else {
    out << text;
  }
  return code;
}

}  // namespace ctsym::cli
