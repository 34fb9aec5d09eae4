#pragma once

// JSON encodings. Rationals are "p/q" strings in lowest terms; nlohmann's default object keeps
// keys sorted, so dump(2) is canonical.

#include <json.hpp>

#include <string>
#include <vector>

#include "tek/error.hpp"
#include "tek/exp_poly.hpp"
#include "tek/modules.hpp"
#include "tek/rational.hpp"
#include "tek/toroidal.hpp"

namespace tek {

using Json = nlohmann::json;

inline Json q_json(const Q& q) { return to_string(q); }

/// Accepts "p/q" strings and JSON integers.
inline Q q_from_json(const Json& j) {
  if (j.is_number_integer()) return Q(j.get<long>());
  if (!j.is_string()) throw ParseError("expected a rational string");
  try {
    return parse_q(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline int int_from_json(const Json& j) {
  if (!j.is_number_integer()) throw ParseError("expected an integer");
  return j.get<int>();
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline const Json& array_field(const Json& j, const char* key, std::size_t arity = 0) {
  const Json& a = field(j, key);
  if (!a.is_array() || (arity && a.size() != arity)) throw ParseError(std::string("field '") + key + "' has the wrong shape");
  return a;
}

// --- algebra elements -------------------------------------------------------

inline Json to_json(const AlgebraElement& x) {
  Json loop = Json::array(), k = Json::array(), skew = Json::array();
  for (const auto& [s, c] : x.terms()) {
    if (s.kind == Kind::Loop) loop.push_back({s.m.m0, s.m.m1, s.idx, q_json(c)});
    if (s.kind == Kind::Skew) skew.push_back({s.m.m0, s.m.m1, q_json(c)});
  }
  for (const auto& [m, ab] : x.k_part()) k.push_back({m.m0, m.m1, q_json(ab.first), q_json(ab.second)});
  const auto d = x.degree_ders();
  return Json{{"loop", loop}, {"k", k}, {"d", Json::array({q_json(d[0]), q_json(d[1])})}, {"skew", skew}};
}

inline AlgebraElement element_from_json(const AlgebraConfig& cfg, const Json& j) {
  if (!j.is_object()) throw ParseError("element must be a JSON object");
  for (const auto& [key, val] : j.items())
    if (key != "loop" && key != "k" && key != "d" && key != "skew") throw ParseError("unknown element field '" + key + "'");
  AlgebraElement x;
  auto rows = [&](const char* key, std::size_t arity) -> Json {
    if (!j.contains(key)) return Json::array();
    const Json& a = j.at(key);
    if (!a.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
    for (const auto& r : a)
      if (!r.is_array() || r.size() != arity) throw ParseError(std::string("bad entry in '") + key + "'");
    return a;
  };
  for (const auto& r : rows("loop", 4)) {
    const int idx = int_from_json(r[2]);
    if (idx < 0 || idx >= cfg.g().dim()) throw SemanticError("loop basis index outside the base algebra");
    x.add(Sym::loop({int_from_json(r[0]), int_from_json(r[1])}, idx), q_from_json(r[3]));
  }
  for (const auto& r : rows("k", 4)) {
    const Exp2 m{int_from_json(r[0]), int_from_json(r[1])};
    x.add(Sym::k(0, m), q_from_json(r[2]));
    x.add(Sym::k(1, m), q_from_json(r[3]));
  }
  if (j.contains("d")) {
    const Json& d = j.at("d");
    if (!d.is_array() || d.size() != 2) throw ParseError("field 'd' must hold two rationals");
    x.add(Sym::d(0), q_from_json(d[0]));
    x.add(Sym::d(1), q_from_json(d[1]));
  }
  for (const auto& r : rows("skew", 3)) {
    const Exp2 m{int_from_json(r[0]), int_from_json(r[1])};
    if (m.is_zero()) throw SemanticError("d_m requires m != 0");
    x.add(Sym::skew(m), q_from_json(r[2]));
  }
  return x;
}

// --- exp-polynomials --------------------------------------------------------

inline Json to_json(const ExpPolynomial& f) {
  Json out = Json::array();
  for (const auto& t : f.terms()) out.push_back({{"c", q_json(t.c)}, {"m", t.m}, {"b", q_json(t.b)}});
  return out;
}

inline ExpPolynomial exp_poly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("exp-polynomial must be an array of terms");
  ExpPolynomial f;
  for (const auto& t : j) f.add(q_from_json(field(t, "c")), int_from_json(field(t, "m")), q_from_json(field(t, "b")));
  return f;
}

// --- modules ----------------------------------------------------------------

inline const char* module_tag(ModuleKind k) {
  switch (k) {
    case ModuleKind::TypeI:
      return "type_i";
    case ModuleKind::GMod:
      return "g_module";
    case ModuleKind::Realization:
      return "realization";
    case ModuleKind::Heisenberg:
      return "heisenberg";
    case ModuleKind::Loop:
      return "loop";
  }
  return "";
}

inline Json to_json(const ModuleVector& v, ModuleKind kind) {
  Json terms = Json::array();
  for (const auto& [k, c] : v.terms()) terms.push_back({k.n.m0, k.n.m1, k.u, k.v, k.loop, q_json(c)});
  return Json{{"module", module_tag(kind)}, {"terms", terms}};
}

inline ModuleVector module_vector_from_json(const Module& mod, const Json& j) {
  if (j.contains("module") && j.at("module") != module_tag(mod.kind())) throw SemanticError("vector belongs to another module");
  ModuleVector v;
  const int du = mod.u_module() ? mod.u_module()->dimension : 1;
  const int dv = mod.v_module() ? mod.v_module()->dimension : 1;
  for (const auto& r : array_field(j, "terms")) {
    if (!r.is_array() || r.size() != 6) throw ParseError("vector terms are [n0, n1, u, v, loop, \"p/q\"]");
    BasisKey k{{int_from_json(r[0]), int_from_json(r[1])}, int_from_json(r[2]), int_from_json(r[3]), int_from_json(r[4])};
    if (k.u < 0 || k.u >= du || k.v < 0 || k.v >= dv) throw SemanticError("vector index outside U or V(lambda)");
    v.add(k, q_from_json(r[5]));
  }
  return v;
}

inline Vec2 vec2_from_json(const Json& j, const char* key) {
  if (!j.contains(key)) return {Q(0), Q(0)};
  const Json& a = j.at(key);
  if (!a.is_array() || a.size() != 2) throw ParseError(std::string("field '") + key + "' must hold two rationals");
  return {q_from_json(a[0]), q_from_json(a[1])};
}

inline std::vector<int> ints_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of integers");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(int_from_json(x));
  return out;
}

inline Mat2 mat2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() || j[1].size() != 2)
    throw ParseError("matrix must be [[a, b], [c, d]]");
  return {int_from_json(j[0][0]), int_from_json(j[0][1]), int_from_json(j[1][0]), int_from_json(j[1][1])};
}

inline Json to_json(const Mat2& a) { return Json::array({Json::array({a.a00, a.a01}), Json::array({a.a10, a.a11})}); }

inline HeisenbergFunctional functional_from_json(const AlgebraConfig& cfg, const Json& j) {
  if (!j.is_object()) throw ParseError("functional must be an object");
  HeisenbergFunctional psi;
  if (j.contains("lambdas")) {
    std::vector<DominantWeight> lambdas;
    for (const auto& l : j.at("lambdas"))
      lambdas.push_back({ints_from_json(field(l, "coords")), q_from_json(field(l, "d0")), q_from_json(field(l, "k0"))});
    std::vector<Q> as;
    for (const auto& a : array_field(j, "a")) as.push_back(q_from_json(a));
    ExpPolynomial phi = j.contains("phi") ? exp_poly_from_json(j.at("phi")) : ExpPolynomial{};
    const Q mu = j.contains("mu") ? q_from_json(j.at("mu")) : cfg.mu;
    const std::string variant = j.value("variant", "lambda_a_phi");
    if (variant != "lambda_a_phi" && variant != "lambda_a") throw ParseError("variant must be lambda_a_phi or lambda_a");
    psi = psi_from_triple(cfg.base, std::move(lambdas), std::move(as), std::move(phi), mu, variant == "lambda_a");
  } else {
    psi.base = cfg.base;
  }
  if (j.contains("table")) {
    for (const auto& e : j.at("table")) {
      const std::string kind = field(e, "kind").get<std::string>();
      HKey key{HKind::Cartan, int_from_json(field(e, "n")), e.contains("a") ? int_from_json(e.at("a")) : 0};
      if (kind == "cartan") {
        if (key.a < 0 || key.a >= cfg.g().dim() || !cfg.g().is_cartan(key.a)) throw SemanticError("not a Cartan index");
      } else if (kind == "k0") {
        key.kind = HKind::K0;
      } else if (kind == "d0") {
        key.kind = HKind::D0;
      } else if (kind == "k1") {
        throw SemanticError("psi(k1) is fixed to 0");
      } else {
        throw ParseError("unknown table kind '" + kind + "'");
      }
      psi.direct_table[key] = q_from_json(field(e, "value"));
    }
  }
  return psi;
}

inline Module module_from_json(const AlgebraConfig& cfg, const Json& j) {
  if (!j.is_object()) throw ParseError("module spec must be an object");
  const Json& tag = field(j, "module");
  if (!tag.is_string()) throw ParseError("'module' must be a string");
  const std::string t = tag.get<std::string>();
  auto dim_u = [&] { return j.contains("dim_u") ? int_from_json(j.at("dim_u")) : 1; };
  auto realization = [&](const Json& s) {
    RealizationSpec r;
    r.dim_u = s.contains("dim_u") ? int_from_json(s.at("dim_u")) : 1;
    r.lambda = ints_from_json(field(s, "lambda"));
    r.gamma = vec2_from_json(s, "gamma");
    r.gamma_p = vec2_from_json(s, "gamma_p");
    r.allow_zero_weight = s.value("allow_zero_weight", false);
    return r;
  };
  std::optional<Module> mod;
  if (t == "type_i") {
    mod.emplace(cfg, TypeISpec{dim_u(), ints_from_json(field(j, "lambda")), vec2_from_json(j, "gamma"),
                               vec2_from_json(j, "gamma_p")});
  } else if (t == "g_module") {
    std::vector<Q> lp;
    for (const auto& x : array_field(j, "lambda_p")) lp.push_back(q_from_json(x));
    mod.emplace(cfg, GModSpec{dim_u(), ints_from_json(field(j, "lambda")), lp, vec2_from_json(j, "gamma"),
                              vec2_from_json(j, "gamma_p")});
  } else if (t == "realization") {
    mod.emplace(cfg, realization(j));
  } else if (t == "heisenberg") {
    mod.emplace(cfg, HeisenbergSpec{functional_from_json(cfg, field(j, "psi")), j.contains("b") ? q_from_json(j.at("b")) : Q(0)});
  } else if (t == "loop") {
    mod.emplace(cfg, LoopSpec{realization(field(j, "inner"))});
  } else {
    throw ParseError("unknown module tag '" + t + "'");
  }
  if (j.contains("twists"))
    for (const auto& a : j.at("twists")) *mod = mod->twisted(mat2_from_json(a));
  return *mod;
}

inline Json to_json(const ModuleWeight& w) {
  Json h = Json::array();
  for (const auto& x : w.h) h.push_back(q_json(x));
  return Json::array({h, q_json(w.d0), q_json(w.d1)});
}

/// [[weight-tuple, dimension], ...] in canonical weight order.
inline Json to_json(const std::map<ModuleWeight, int>& table) {
  Json out = Json::array();
  for (const auto& [w, d] : table) out.push_back(Json::array({to_json(w), d}));
  return out;
}

}  // namespace tek
