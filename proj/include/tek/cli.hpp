#pragma once

// Command-line front end. run_cli is kept in the header so tests can drive it in-process.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "tek/checks.hpp"

namespace tek {

enum ExitCode : int { kExitPass = 0, kExitViolation = 1, kExitParse = 2, kExitSemantic = 3, kExitBound = 4 };

struct SweepConfig {
  std::optional<int> exponent_box;
  long samples = 10000;
  std::uint64_t seed = 1;
};

struct RunConfig {
  AlgebraConfig algebra;
  SweepConfig sweep;
  Json raw = Json::object();
};

inline RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  RunConfig rc;
  int rank = 1;
  Q mu = 0;
  const Json* corrupt = nullptr;
  if (j.contains("algebra")) {
    const Json& a = j.at("algebra");
    if (!a.is_object()) throw ParseError("'algebra' must be an object");
    if (a.contains("rank")) rank = int_from_json(a.at("rank"));
    if (a.contains("mu")) mu = q_from_json(a.at("mu"));
    if (a.contains("corrupt")) corrupt = &a.at("corrupt");
  }
  if (rank < 1 || rank > 4) throw SemanticError("rank must lie in [1, 4]");
  rc.algebra = make_config(rank, mu);
  if (corrupt) {
    const int dim = rc.algebra.g().dim();
    const int a = int_from_json(field(*corrupt, "a")), b = int_from_json(field(*corrupt, "b")),
              c = int_from_json(field(*corrupt, "index"));
    if (a < 0 || b < 0 || c < 0 || a >= dim || b >= dim || c >= dim) throw SemanticError("corrupt indices outside the base algebra");
    rc.algebra = fixtures::corrupt_structure(rc.algebra, a, b, c, q_from_json(field(*corrupt, "delta")));
  }
  if (j.contains("sweep")) {
    const Json& s = j.at("sweep");
    if (!s.is_object()) throw ParseError("'sweep' must be an object");
    if (s.contains("exponent_box")) rc.sweep.exponent_box = int_from_json(s.at("exponent_box"));
    if (s.contains("samples")) rc.sweep.samples = int_from_json(s.at("samples"));
    if (s.contains("seed")) {
      if (!s.at("seed").is_number_unsigned()) throw ParseError("seed must be a non-negative integer");
      rc.sweep.seed = s.at("seed").get<std::uint64_t>();
    }
  }
  if (rc.sweep.exponent_box && *rc.sweep.exponent_box < 1) throw SemanticError("exponent_box must be at least 1");
  if (rc.sweep.samples < 1) throw SemanticError("samples must be positive");
  rc.raw = j;
  return rc;
}

namespace detail {

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

inline Report run_suite(const std::string& suite, const RunConfig& rc) {
  const AlgebraConfig& cfg = rc.algebra;
  const auto& sw = rc.sweep;
  if (suite == "jacobi") return check_jacobi(cfg, sw.exponent_box.value_or(2));
  if (suite == "invariance") return check_invariance(cfg, sw.exponent_box.value_or(2), sw.samples, sw.seed);
  if (suite == "kwelldef") return check_kwelldef(cfg, sw.exponent_box.value_or(3));
  if (suite == "d_k") return check_d_k(cfg, sw.exponent_box.value_or(3));
  if (suite == "automorphism") return check_automorphisms(cfg, sw.exponent_box.value_or(2));
  if (suite == "lambda") return check_lambda(cfg, sw.seed);
  if (suite == "exppoly") return check_exppoly(cfg, sw.seed, 100);
  if (suite == "heisenberg") {
    std::vector<HeisenbergFixture> fx;
    if (rc.raw.contains("fixtures")) {
      for (const auto& f : rc.raw.at("fixtures"))
        fx.push_back({f.value("name", std::string("fixture")), functional_from_json(cfg, field(f, "psi")),
                      int_from_json(field(f, "expected_r"))});
    } else {
      fx = heisenberg_fixtures(cfg);
    }
    return check_heisenberg(fx, sw.exponent_box.value_or(24));
  }
  if (suite == "module") {
    std::vector<Module> mods;
    if (rc.raw.contains("modules")) {
      for (const auto& m : rc.raw.at("modules")) mods.push_back(module_from_json(cfg, m));
    } else {
      if (cfg.g().rank != 1) throw SemanticError("the default module sweep is over sl_2; pass 'modules' for other ranks");
      mods = default_module_sweep(cfg);
    }
    const int box = sw.exponent_box.value_or(2);
    return check_modules(mods, box, box);
  }
  throw SemanticError("unknown suite '" + suite + "'");
}

inline void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& text) {
  if (path) {
    std::ofstream f(*path);
    if (!f) throw SemanticError("cannot write " + *path);
    f << text;
  } else {
    out << text;
  }
}

inline std::string vector_text(const ModuleVector& v) {
  if (v.is_zero()) return "0\n";
  std::string s;
  for (const auto& [k, c] : v.terms())
    s += to_string(c) + " [n=(" + std::to_string(k.n.m0) + "," + std::to_string(k.n.m1) + ") u=" + std::to_string(k.u) +
         " v=" + std::to_string(k.v) + " loop=" + std::to_string(k.loop) + "]\n";
  return s;
}

}  // namespace detail

/// Runs one CLI invocation; returns the exit code. Reports go to `out`, diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in the nullity-2 toroidal Lie algebra", "tek"};
  app.require_subcommand(1);
  std::string config_path;
  bool as_json = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> box;
  std::optional<std::string> out_path;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_flag("--json", as_json, "emit JSON instead of text");
  app.add_option("--seed", seed, "seed for sampled sweeps");
  app.add_option("--box", box, "exponent box half-width");
  app.add_option("--out", out_path, "write the report to FILE");

  auto* bracket_cmd = app.add_subcommand("bracket", "bracket of config.x and config.y");
  auto* form_cmd = app.add_subcommand("form", "invariant form of config.x and config.y");
  auto* check_cmd = app.add_subcommand("check", "run a verification suite");
  std::string suite;
  check_cmd->add_option("suite", suite, "jacobi|invariance|kwelldef|d_k|module|automorphism|lambda|heisenberg|exppoly")
      ->required();
  auto* module_cmd = app.add_subcommand("module", "module computations");
  std::string sub;
  module_cmd->add_option("action", sub, "act|weights|nilpotence")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    RunConfig rc = run_config_from_json(config_path.empty() ? Json::object() : detail::read_json_file(config_path));
    if (seed) rc.sweep.seed = *seed;
    if (box) {
      if (*box < 1) throw SemanticError("--box must be at least 1");
      rc.sweep.exponent_box = *box;
    }
    const AlgebraConfig& cfg = rc.algebra;

    if (bracket_cmd->parsed() || form_cmd->parsed()) {
      const AlgebraElement x = element_from_json(cfg, field(rc.raw, "x"));
      const AlgebraElement y = element_from_json(cfg, field(rc.raw, "y"));
      if (bracket_cmd->parsed()) {
        const AlgebraElement r = bracket(cfg, x, y);
        detail::emit(out, out_path, as_json ? Json{{"result", to_json(r)}}.dump(2) + "\n" : describe(cfg, r) + "\n");
      } else {
        const Q v = invariant_form(cfg, x, y);
        detail::emit(out, out_path, as_json ? Json{{"value", q_json(v)}}.dump(2) + "\n" : to_string(v) + "\n");
      }
      return kExitPass;
    }

    if (check_cmd->parsed()) {
      const Report rep = detail::run_suite(suite, rc);
      detail::emit(out, out_path, as_json ? rep.to_json().dump(2) + "\n" : rep.to_text());
      return rep.passed() ? kExitPass : kExitViolation;
    }

    // module
    const Module mod = module_from_json(cfg, field(rc.raw, "module"));
    if (sub == "act") {
      const AlgebraElement x = element_from_json(cfg, field(rc.raw, "x"));
      const ModuleVector w = module_vector_from_json(mod, field(rc.raw, "vector"));
      const ModuleVector r = mod.kind() == ModuleKind::Loop ? loop_act(mod, x, w) : mod.act(x, w);
      detail::emit(out, out_path, as_json ? Json{{"result", to_json(r, mod.kind())}}.dump(2) + "\n" : detail::vector_text(r));
      return kExitPass;
    }
    if (sub == "weights") {
      const auto table = mod.weight_table(rc.sweep.exponent_box.value_or(2));
      std::string text;
      for (const auto& [w, dim] : table) {
        text += "h=(";
        for (std::size_t i = 0; i < w.h.size(); ++i) text += (i ? "," : "") + to_string(w.h[i]);
        text += ") d0=" + to_string(w.d0) + " d1=" + to_string(w.d1) + " dim=" + std::to_string(dim) + "\n";
      }
      detail::emit(out, out_path, as_json ? Json{{"weights", to_json(table)}}.dump(2) + "\n" : text);
      return kExitPass;
    }
    if (sub == "nilpotence") {
      const AlgebraElement x = element_from_json(cfg, field(rc.raw, "x"));
      const ModuleVector w = module_vector_from_json(mod, field(rc.raw, "vector"));
      const int bound = rc.raw.contains("bound") ? int_from_json(rc.raw.at("bound")) : 16;
      if (bound < 0) throw SemanticError("bound must be non-negative");
      const auto idx = nilpotence_index(mod, x, w, bound);
      if (!idx) throw BoundExceeded("x^" + std::to_string(bound) + ".w is still nonzero");
      detail::emit(out, out_path, as_json ? Json{{"index", *idx}}.dump(2) + "\n" : std::to_string(*idx) + "\n");
      return kExitPass;
    }
    throw SemanticError("unknown module action '" + sub + "'");
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SemanticError& e) {
    err << "semantic error: " << e.what() << "\n";
    return kExitSemantic;
  } catch (const BoundExceeded& e) {
    err << "Failure: " << e.what() << "\n";
    if (as_json) out << Json{{"failure", e.what()}}.dump(2) << "\n";
    return kExitBound;
  } catch (const CheckFailure& e) {
    err << "check failure: " << e.what() << "\n";
    return kExitViolation;
  }
}

}  // namespace tek
