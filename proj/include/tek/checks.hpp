#pragma once

// Verification suites. Each returns a Report listing every violating tuple (the first
// kMaxListed are spelled out, all are counted).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tek/exp_poly.hpp"
#include "tek/lambda_ops.hpp"
#include "tek/lcg.hpp"
#include "tek/modules.hpp"
#include "tek/parallel.hpp"
#include "tek/serialize.hpp"
#include "tek/toroidal.hpp"

namespace tek {

inline constexpr std::size_t kMaxListed = 50;

struct Report {
  std::string suite;
  std::vector<std::string> identities;
  long checked = 0;
  long violation_count = 0;
  std::vector<std::string> violations;
  Json details = Json::object();

  bool passed() const { return violation_count == 0; }

  void violate(std::string what) {
    ++violation_count;
    if (violations.size() < kMaxListed) violations.push_back(std::move(what));
  }
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (!ok) violate(what());
  }
  void absorb(const Report& o) {
    checked += o.checked;
    violation_count += o.violation_count;
    for (const auto& v : o.violations)
      if (violations.size() < kMaxListed) violations.push_back(v);
  }

  Json to_json() const {
    return Json{{"suite", suite},
                {"identities", identities},
                {"checked", checked},
                {"violation_count", violation_count},
                {"violations", violations},
                {"passed", passed()},
                {"details", details}};
  }

  std::string to_text() const {
    std::string out = suite + ": " + (passed() ? "PASS" : "FAIL") + " (" + std::to_string(checked) + " checks, " +
                      std::to_string(violation_count) + " violations)\n";
    for (const auto& id : identities) out += "  identity: " + id + "\n";
    for (const auto& [k, v] : details.items()) out += "  " + k + ": " + v.dump() + "\n";
    for (const auto& v : violations) out += "  violation: " + v + "\n";
    return out;
  }
};

namespace detail {

inline std::string triple_name(const AlgebraConfig& cfg, const Sym& a, const Sym& b, const Sym& c) {
  return "(" + describe(cfg, a) + ", " + describe(cfg, b) + ", " + describe(cfg, c) + ")";
}
inline std::string pair_name(const AlgebraConfig& cfg, const Sym& a, const Sym& b) {
  return "(" + describe(cfg, a) + ", " + describe(cfg, b) + ")";
}

// Finite root part plus exponent of a symbol, used for the grading check.
inline std::pair<Root, Exp2> label(const AlgebraConfig& cfg, const Sym& s) {
  return {s.kind == Kind::Loop ? cfg.g().roots[s.idx] : Root(cfg.g().rank, 0), s.m};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bracket axioms

/// Antisymmetry, grading and the Jacobi identity over every basis triple with exponents in the box.
inline Report check_jacobi(const AlgebraConfig& cfg, int box) {
  Report rep;
  rep.suite = "jacobi";
  rep.identities = {"[x,y] = -[y,x]", "[g_(a;m), g_(b;n)] in g_(a+b;m+n)", "[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0"};
  const auto basis = basis_in_box(cfg, box);
  const std::size_t n = basis.size();
  std::vector<AlgebraElement> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = bracket(cfg, basis[i], basis[j]);

  Report axioms;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& xy = table[i * n + j];
      axioms.expect(xy == Q(-1) * table[j * n + i],
                    [&] { return "antisymmetry " + detail::pair_name(cfg, basis[i], basis[j]); });
      const auto [ra, ma] = detail::label(cfg, basis[i]);
      const auto [rb, mb] = detail::label(cfg, basis[j]);
      Root sum = ra;
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += rb[k];
      bool graded = true;
      for (const auto& [s, c] : xy.terms()) graded = graded && detail::label(cfg, s) == std::make_pair(sum, ma + mb);
      axioms.expect(graded, [&] { return "grading " + detail::pair_name(cfg, basis[i], basis[j]); });
    }
  rep.absorb(axioms);

  auto cocycle_pair = [&](const Sym& a, const Sym& b) {
    return a.kind == Kind::Skew && b.kind == Kind::Skew && det2(a.m, b.m) != 0;
  };
  struct Row {
    Report rep;
    long cocycle = 0;
  };
  auto rows = sharded_map(n, [&](std::size_t i) {
    Row row;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        AlgebraElement acc;
        auto sink = [&](const Sym& s, const Q& c) { acc.add(s, c); };
        for (const auto& [s, c] : table[j * n + k].terms()) bracket_symbols(cfg, basis[i], s, c, sink);
        for (const auto& [s, c] : table[k * n + i].terms()) bracket_symbols(cfg, basis[j], s, c, sink);
        for (const auto& [s, c] : table[i * n + j].terms()) bracket_symbols(cfg, basis[k], s, c, sink);
        row.rep.expect(acc.is_zero(), [&] {
          return "jacobi " + detail::triple_name(cfg, basis[i], basis[j], basis[k]) + " -> " + describe(cfg, acc);
        });
        if (sgn(cfg.mu) != 0 &&
            (cocycle_pair(basis[i], basis[j]) || cocycle_pair(basis[j], basis[k]) || cocycle_pair(basis[k], basis[i])))
          ++row.cocycle;
      }
    return row;
  });
  long cocycle = 0;
  for (const auto& r : rows) {
    rep.absorb(r.rep);
    cocycle += r.cocycle;
  }
  rep.details = {{"rank", cfg.g().rank}, {"mu", q_json(cfg.mu)}, {"box", box}, {"basis_size", n},
                 {"triples", static_cast<long>(n * n * n)}, {"mu_cocycle_triples", cocycle}};
  return rep;
}

/// <[x,y],z> = <x,[y,z]> on seeded basis triples. Half of the z draws are forced into the
/// opposite degree of [x,y] so that the pairing is not trivially zero.
inline Report check_invariance(const AlgebraConfig& cfg, int box, long samples, std::uint64_t seed) {
  Report rep;
  rep.suite = "invariance";
  rep.identities = {"<[x,y],z> = <x,[y,z]>"};
  const auto basis = basis_in_box(cfg, box);
  std::map<Exp2, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < basis.size(); ++i) by_degree[basis[i].m].push_back(i);
  Lcg rng(seed);
  long nontrivial = 0;
  for (long t = 0; t < samples; ++t) {
    const Sym& x = basis[rng.below(basis.size())];
    const Sym& y = basis[rng.below(basis.size())];
    const Sym* z = &basis[rng.below(basis.size())];
    if (rng.below(2) == 0) {
      auto it = by_degree.find(-(x.m + y.m));
      if (it != by_degree.end()) z = &basis[it->second[rng.below(it->second.size())]];
    }
    const Q lhs = invariant_form(cfg, bracket(cfg, AlgebraElement(x), AlgebraElement(y)), AlgebraElement(*z));
    const Q rhs = invariant_form(cfg, AlgebraElement(x), bracket(cfg, AlgebraElement(y), AlgebraElement(*z)));
    if (sgn(lhs) != 0 || sgn(rhs) != 0) ++nontrivial;
    rep.expect(lhs == rhs, [&] {
      return detail::triple_name(cfg, x, y, *z) + ": " + to_string(lhs) + " != " + to_string(rhs);
    });
  }
  rep.details = {{"rank", cfg.g().rank}, {"mu", q_json(cfg.mu)}, {"box", box}, {"samples", samples},
                 {"seed", seed}, {"nonzero_pairings", nontrivial}};
  return rep;
}

/// Exact forms m0 t^m k0 + m1 t^m k1 are central and isotropic for every basis element, and the
/// normal form is compatible with the bracket and the form.
inline Report check_kwelldef(const AlgebraConfig& cfg, int box) {
  Report rep;
  rep.suite = "kwelldef";
  rep.identities = {"[x, m0 t^m k0 + m1 t^m k1] = 0", "<x, m0 t^m k0 + m1 t^m k1> = 0",
                    "bracket and form factor through the K normal form"};
  const auto basis = basis_in_box(cfg, box);
  for (int m0 = -box; m0 <= box; ++m0)
    for (int m1 = -box; m1 <= box; ++m1) {
      const Exp2 m{m0, m1};
      if (m.is_zero()) continue;
      const Sym k0{Kind::K, 0, m}, k1{Kind::K, 1, m};
      for (const Sym& x : basis) {
        AlgebraElement acc;
        auto sink = [&](const Sym& s, const Q& c) { acc.add(s, c); };
        bracket_symbols(cfg, x, k0, Q(m0), sink);
        bracket_symbols(cfg, x, k1, Q(m1), sink);
        rep.expect(acc.is_zero(), [&] { return "bracket with exact form at " + describe(cfg, Sym::skew(m)) + " and " + describe(cfg, x); });
        const Q f = m0 * invariant_form(cfg, x, k0) + m1 * invariant_form(cfg, x, k1);
        rep.expect(sgn(f) == 0, [&] { return "form with exact form at " + describe(cfg, Sym::skew(m)) + " and " + describe(cfg, x); });
        for (const Sym& raw : {k0, k1}) {
          AlgebraElement direct;
          auto sink2 = [&](const Sym& s, const Q& c) { direct.add(s, c); };
          bracket_symbols(cfg, x, raw, Q(1), sink2);
          const AlgebraElement normal(raw);
          rep.expect(direct == bracket(cfg, AlgebraElement(x), normal),
                     [&] { return "bracket normal form " + detail::pair_name(cfg, x, raw); });
          rep.expect(invariant_form(cfg, x, raw) == invariant_form(cfg, AlgebraElement(x), normal),
                     [&] { return "form normal form " + detail::pair_name(cfg, x, raw); });
        }
      }
    }
  rep.details = {{"rank", cfg.g().rank}, {"mu", q_json(cfg.mu)}, {"box", box}};
  return rep;
}

/// [d_m, k_n] = det(m;n) k_{m+n} in normal form for m, n in the box, n != 0. The bracket table
/// gives m0 k0 + m1 k1 when m + n = 0, where the closed form predicts 0; those pairs are counted
/// separately in the details.
inline Report check_d_k(const AlgebraConfig& cfg, int box) {
  Report rep;
  rep.suite = "d_k";
  rep.identities = {"[d_m, k_n] = det(m;n) k_{m+n}"};
  long degree_zero = 0;
  for (int a0 = -box; a0 <= box; ++a0)
    for (int a1 = -box; a1 <= box; ++a1)
      for (int b0 = -box; b0 <= box; ++b0)
        for (int b1 = -box; b1 <= box; ++b1) {
          const Exp2 m{a0, a1}, n{b0, b1};
          if (n.is_zero()) continue;
          bool ok = true;
          try {
            bracket_d_k(cfg, m, n);
          } catch (const CheckFailure&) {
            ok = false;
            if ((m + n).is_zero()) ++degree_zero;
          }
          rep.expect(ok, [&] { return "[d_m, k_n] at m=" + describe(cfg, Sym::skew(m)) + " n=" + describe(cfg, Sym::skew(n)); });
        }
  rep.details = {{"rank", cfg.g().rank}, {"mu", q_json(cfg.mu)}, {"box", box},
                 {"violations_with_m_plus_n_zero", degree_zero}};
  return rep;
}

/// Affine sl_2 relations for every (alpha, m, n) with m in the box and integral shift n in
/// {0, +-m1} (m1 != 0) or {0, +-m0} (m1 = 0).
inline Report check_sl2_hat_family(const AlgebraConfig& cfg, int box, int kspan = 2) {
  Report rep;
  rep.suite = "sl2hat";
  rep.identities = {"affine sl_2 relations on the span of the sl2_hat generators"};
  for (int a : cfg.g().positive)
    for (int m0 = -box; m0 <= box; ++m0)
      for (int m1 = -box; m1 <= box; ++m1) {
        const Exp2 m{m0, m1};
        if (m.is_zero()) continue;
        const int step = m1 != 0 ? m1 : m0;
        for (int n : {0, step, -step}) {
          const auto s = sl2_hat(cfg, cfg.g().roots[a], m, n, -kspan, kspan);
          const auto bad = check_sl2_hat(cfg, s);
          rep.expect(bad.empty(), [&] {
            return "sl2_hat(" + cfg.g().names[a] + ", " + describe(cfg, Sym::skew(m)) + ", " + std::to_string(n) +
                   "): " + bad.front();
          });
        }
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Automorphisms

inline std::vector<Mat2> automorphism_generators() { return {{0, 1, 1, 0}, {1, 1, 0, 1}, {-1, 0, 0, -1}}; }

/// The generators and all products of two of them, without repeats.
inline std::vector<Mat2> automorphism_sample() {
  std::vector<Mat2> out;
  auto push = [&](const Mat2& a) {
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  };
  for (const auto& a : automorphism_generators()) push(a);
  for (const auto& a : automorphism_generators())
    for (const auto& b : automorphism_generators()) push(a * b);
  return out;
}

inline std::string mat_name(const Mat2& a) {
  return "[[" + std::to_string(a.a00) + "," + std::to_string(a.a01) + "],[" + std::to_string(a.a10) + "," +
         std::to_string(a.a11) + "]]";
}

/// chi_A preserves brackets, chi_A chi_B = chi_AB, pi_S is a homomorphism, and twisted central
/// charges transform as (c0, c1) A.
inline Report check_automorphisms(const AlgebraConfig& cfg, int box) {
  Report rep;
  rep.suite = "automorphism";
  rep.identities = {"chi_A[x,y] = [chi_A x, chi_A y]", "chi_A chi_B = chi_AB", "pi_S[x,y] = [pi_S x, pi_S y]_S",
                    "central charge of W_A = (c0, c1) A"};
  const auto basis = basis_in_box(cfg, box);
  const auto mats = automorphism_sample();
  const std::size_t n = basis.size();
  std::vector<AlgebraElement> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = bracket(cfg, basis[i], basis[j]);
  for (const auto& a : mats) {
    std::vector<AlgebraElement> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = chi_A(cfg, a, AlgebraElement(basis[i]));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        rep.expect(chi_A(cfg, a, table[i * n + j]) == bracket(cfg, img[i], img[j]),
                   [&] { return "chi_" + mat_name(a) + " on " + detail::pair_name(cfg, basis[i], basis[j]); });
    for (const auto& b : mats)
      for (std::size_t i = 0; i < n; ++i)
        rep.expect(chi_A(cfg, a, chi_A(cfg, b, AlgebraElement(basis[i]))) == chi_A(cfg, a * b, AlgebraElement(basis[i])),
                   [&] { return "chi_" + mat_name(a) + " chi_" + mat_name(b) + " on " + describe(cfg, basis[i]); });
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rep.expect(pi_S(cfg, table[i * n + j]) ==
                     s_bracket(pi_S(cfg, AlgebraElement(basis[i])), pi_S(cfg, AlgebraElement(basis[j]))),
                 [&] { return "pi_S on " + detail::pair_name(cfg, basis[i], basis[j]); });

  // Central charges: a Heisenberg module with psi(k0) = 1 has charge (1, 0); twisting it by
  // B = [[2,3],[1,2]] gives charge (2, 3).
  HeisenbergFunctional psi;
  psi.base = cfg.base;
  psi.direct_table[{HKind::K0, 0, 0}] = 1;
  const Module base(cfg, HeisenbergSpec{psi, Q(0)});
  const ModuleVector v(BasisKey{});
  const Mat2 to23{2, 3, 1, 2};
  for (const auto& [mod, c] : std::vector<std::pair<Module, Vec2>>{{base, {Q(1), Q(0)}}, {base.twisted(to23), {Q(2), Q(3)}}}) {
    rep.expect(mod.central_charge(v) == c, [&] { return std::string("fixture central charge"); });
    for (const auto& a : mats) {
      const Vec2 want = central_charge_transform(c, a);
      const Vec2 got = mod.twisted(a).central_charge(v);
      rep.expect(got == want, [&] {
        return "central charge (" + to_string(c[0]) + "," + to_string(c[1]) + ") under " + mat_name(a) + ": got (" +
               to_string(got[0]) + "," + to_string(got[1]) + ")";
      });
    }
  }
  rep.details = {{"rank", cfg.g().rank}, {"mu", q_json(cfg.mu)}, {"box", box}, {"matrices", mats.size()}};
  return rep;
}

// ---------------------------------------------------------------------------
// Modules

/// [x,y].w = x.(y.w) - y.(x.w) for all algebra basis pairs in `box` and module basis vectors in `vbox`.
inline Report check_module_axioms(const Module& mod, int box, int vbox) {
  Report rep;
  rep.suite = "module";
  const AlgebraConfig& cfg = mod.config();
  const auto vectors = mod.basis(vbox);
  if (mod.kind() == ModuleKind::GMod && mod.twists().empty()) {
    // G basis: h_a(m), d_0, d_1, d(m).
    std::vector<std::pair<std::string, GElement>> gb;
    for (int a = 0; a < cfg.g().dim(); ++a)
      if (cfg.g().is_cartan(a))
        for (int m0 = -box; m0 <= box; ++m0)
          for (int m1 = -box; m1 <= box; ++m1) {
            GElement x;
            x.add_h({m0, m1}, a, Q(1));
            gb.emplace_back(cfg.g().names[a] + "(" + std::to_string(m0) + "," + std::to_string(m1) + ")", x);
          }
    for (int i = 0; i < 2; ++i) {
      GElement x;
      x.s.d[i] = 1;
      gb.emplace_back("d" + std::to_string(i), x);
    }
    for (int m0 = -box; m0 <= box; ++m0)
      for (int m1 = -box; m1 <= box; ++m1)
        if (m0 || m1) {
          GElement x;
          x.s.add_dm({m0, m1}, Q(1));
          gb.emplace_back("d(" + std::to_string(m0) + "," + std::to_string(m1) + ")", x);
        }
    auto rows = sharded_map(gb.size(), [&](std::size_t i) {
      Report r;
      for (const auto& [yn, y] : gb) {
        const GElement xy = g_algebra_bracket(gb[i].second, y);
        for (const auto& k : vectors) {
          const ModuleVector w(k);
          r.expect(mod.act_g(xy, w) == mod.act_g(gb[i].second, mod.act_g(y, w)) - mod.act_g(y, mod.act_g(gb[i].second, w)),
                   [&] { return "G pair (" + gb[i].first + ", " + yn + ")"; });
        }
      }
      return r;
    });
    for (const auto& r : rows) rep.absorb(r);
    return rep;
  }
  const auto alg = mod.algebra_basis(box);
  auto rows = sharded_map(alg.size(), [&](std::size_t i) {
    Report r;
    const AlgebraElement x(alg[i]);
    for (const auto& ys : alg) {
      const AlgebraElement y(ys);
      const AlgebraElement xy = bracket(cfg, x, y);
      for (const auto& k : vectors) {
        const ModuleVector w(k);
        r.expect(mod.act(xy, w) == mod.act(x, mod.act(y, w)) - mod.act(y, mod.act(x, w)), [&] {
          return "pair " + detail::pair_name(cfg, alg[i], ys) + " on (" + std::to_string(k.n.m0) + "," +
                 std::to_string(k.n.m1) + "," + std::to_string(k.u) + "," + std::to_string(k.v) + "," +
                 std::to_string(k.loop) + ")";
        });
      }
    }
    return r;
  });
  for (const auto& r : rows) rep.absorb(r);
  return rep;
}

inline std::string spec_name(const Module& mod) {
  std::string out = module_tag(mod.kind());
  auto vec = [](const Vec2& v) { return "(" + to_string(v[0]) + "," + to_string(v[1]) + ")"; };
  auto lam = [](const std::vector<int>& l) {
    std::string s = "[";
    for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
    return s + "]";
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TypeISpec> || std::is_same_v<T, GModSpec> || std::is_same_v<T, RealizationSpec>)
          out += " U=" + std::to_string(s.dim_u) + " lambda=" + lam(s.lambda) + " gamma=" + vec(s.gamma) +
                 " gamma'=" + vec(s.gamma_p);
        else if constexpr (std::is_same_v<T, LoopSpec>)
          out += " inner U=" + std::to_string(s.inner.dim_u) + " lambda=" + lam(s.inner.lambda);
        else
          out += " b=" + to_string(s.b);
      },
      mod.spec());
  for (const auto& a : mod.twists()) out += " twist " + mat_name(a);
  return out;
}

/// The default sweep: TypeI, GMod and Realization over sl_2 with lambda in {w, 2w}, dim U in
/// {1, 2, 3} and gamma, gamma' in {(0,0), (1/2,-1/3)}.
inline std::vector<Module> default_module_sweep(const AlgebraConfig& cfg) {
  std::vector<Module> out;
  const std::vector<Vec2> shifts = {{Q(0), Q(0)}, {Q(1, 2), Q(-1, 3)}};
  for (int l : {1, 2})
    for (int du : {1, 2, 3})
      for (const auto& g : shifts)
        for (const auto& gp : shifts) {
          out.emplace_back(cfg, TypeISpec{du, {l}, g, gp});
          out.emplace_back(cfg, GModSpec{du, {l}, {Q(1, 3)}, g, gp});
          out.emplace_back(cfg, RealizationSpec{du, {l}, g, gp});
        }
  return out;
}

inline Report check_modules(const std::vector<Module>& mods, int box, int vbox) {
  Report rep;
  rep.suite = "module";
  rep.identities = {"[x,y].w = x.(y.w) - y.(x.w)"};
  Json per = Json::array();
  for (const auto& m : mods) {
    const Report r = check_module_axioms(m, box, vbox);
    per.push_back({{"spec", spec_name(m)}, {"checked", r.checked}, {"violations", r.violation_count}});
    for (const auto& v : r.violations)
      if (rep.violations.size() < kMaxListed) rep.violations.push_back(spec_name(m) + ": " + v);
    rep.checked += r.checked;
    rep.violation_count += r.violation_count;
  }
  rep.details = {{"box", box}, {"vector_box", vbox}, {"specs", per}};
  return rep;
}

/// nilpotence_index of t^m (x) x_beta on realization basis vectors is at most the length of the
/// beta-string of V(lambda) starting at the vector's weight, and that length is at most
/// max_alpha lambda(alpha^vee) + 1. On the highest weight vector, x_-alpha has index exactly
/// lambda(alpha^vee) + 1. `literal_exceed` counts vectors above lambda(alpha^vee) + 1 for the
/// root alpha of x itself.
inline Report check_integrability(const Module& mod, int box, int vbox) {
  Report rep;
  rep.suite = "integrability";
  rep.identities = {"(t^m (x) x_beta)^s w = 0 with s the beta-string length from wt(w)",
                    "s <= max_alpha lambda(alpha^vee) + 1",
                    "(t^m (x) x_-alpha)^(lambda(alpha^vee)+1) v_top = 0 and the previous power is not"};
  const auto* spec = std::get_if<RealizationSpec>(&mod.spec());
  if (!spec) throw SemanticError("integrability probe expects a realization spec");
  const SimpleAlgebra& g = mod.config().g();
  const FiniteModule& v = *mod.v_module();
  const std::set<std::vector<int>> weights(v.weight_of_basis.begin(), v.weight_of_basis.end());
  auto dynkin = [&](const Root& r) {
    std::vector<int> out(g.rank, 0);
    for (int i = 0; i < g.rank; ++i)
      for (int j = 0; j < g.rank; ++j) out[i] += r[j] * (i == j ? 2 : (std::abs(i - j) == 1 ? -1 : 0));
    return out;
  };
  auto lambda_on = [&](const Root& pos) {
    const auto hc = coroot(g, pos);
    Q out;
    for (int b = 0; b < g.dim(); ++b)
      if (sgn(hc[b]) != 0) out += hc[b] * g.cartan_value(b, spec->lambda);
    return static_cast<int>(out.get_num().get_si());
  };
  int global = 0;
  for (int a : g.positive) global = std::max(global, lambda_on(g.roots[a]) + 1);
  long max_index = 0, literal_exceed = 0;
  const auto vectors = mod.basis(vbox);
  for (int a = 0; a < g.dim(); ++a) {
    if (g.is_cartan(a)) continue;
    Root pos = g.roots[a];
    if (root_height(pos) < 0)
      for (auto& c : pos) c = -c;
    const int literal = lambda_on(pos) + 1;
    const auto step = dynkin(g.roots[a]);
    for (int m0 = -box; m0 <= box; ++m0)
      for (int m1 = -box; m1 <= box; ++m1) {
        const AlgebraElement x(Sym::loop({m0, m1}, a));
        const std::string xname = describe(mod.config(), Sym::loop({m0, m1}, a));
        for (const auto& k : vectors) {
          auto mu = v.weight_of_basis[k.v];
          int string = 0;
          while (weights.count(mu)) {
            ++string;
            for (int i = 0; i < g.rank; ++i) mu[i] += step[i];
          }
          rep.expect(string <= global, [&] { return xname + ": string longer than the global bound"; });
          const auto idx = nilpotence_index(mod, x, ModuleVector(k), string);
          if (idx) {
            max_index = std::max<long>(max_index, *idx);
            if (*idx > literal) ++literal_exceed;
          }
          rep.expect(idx.has_value(), [&] {
            return xname + " on v" + std::to_string(k.v) + " exceeds the string bound " + std::to_string(string);
          });
        }
        if (root_height(g.roots[a]) < 0) {
          const ModuleVector top(BasisKey{{}, 0, v.highest_index, 0});
          const auto idx = nilpotence_index(mod, x, top, literal);
          rep.expect(idx == literal, [&] { return xname + " on the top vector: index differs from lambda(alpha^vee) + 1"; });
        }
      }
  }
  rep.details = {{"spec", spec_name(mod)}, {"max_index", max_index}, {"global_bound", global},
                 {"above_own_root_bound", literal_exceed}};
  return rep;
}

// ---------------------------------------------------------------------------
// Lambda operators

/// Lambda_b v = (-1)^b C(k,b) t0^b v (b <= k), Lambda_b v = 0 (k < b <= k+3), Lambda_k Lambda_-k v = v
/// on the realization with lambda = k w and the top vector.
inline Report check_binomial(const AlgebraConfig& cfg, int kmax) {
  Report rep;
  rep.suite = "binomial";
  rep.identities = {"sum_b Lambda_b z^b v = (1 - t0 z)^k v", "Lambda_b v = 0 for b > k",
                    "Lambda_k Lambda_-k v = v"};
  if (cfg.g().rank != 1) throw SemanticError("binomial identity is stated for sl_2");
  for (int k = 1; k <= kmax; ++k) {
    const Module mod(cfg, RealizationSpec{1, {k}, {}, {}});
    const ModuleVector v(BasisKey{{}, 0, mod.v_module()->highest_index, 0});
    const auto series = lambda_alpha_m_n(mod, {1}, {1, 0}, 0, k + 3);
    for (int b = 0; b <= k; ++b) {
      const ModuleVector want(BasisKey{{b, 0}, 0, v.terms().begin()->first.v, 0}, (b % 2 ? Q(-1) : Q(1)) * binomial(Q(k), b));
      rep.expect(series.apply(b, v) == want, [&] { return "k=" + std::to_string(k) + " b=" + std::to_string(b); });
    }
    const auto lemma = check_lemma_4_1(mod, {1}, {1, 0}, v, k + 3);
    rep.expect(lemma.precondition, [&] { return "k=" + std::to_string(k) + ": " + lemma.precondition_failure; });
    for (const auto& [b, ok] : lemma.vanish_plus)
      rep.expect(ok, [&] { return "k=" + std::to_string(k) + " Lambda_" + std::to_string(b) + " v != 0"; });
    for (const auto& [b, ok] : lemma.vanish_minus)
      rep.expect(ok, [&] { return "k=" + std::to_string(k) + " Lambda_-" + std::to_string(b) + " v != 0"; });
    rep.expect(lemma.product, [&] { return "k=" + std::to_string(k) + " Lambda_k Lambda_-k v != v"; });
  }
  return rep;
}

/// Lambda_b^{alpha,m,n} = sum_s (2n/<alpha,alpha>)^s Lambda_b^{alpha,m}(s), the top stratum, and the
/// Vandermonde recovery of the strata, on the given probe vectors.
inline Report check_strata(const LambdaStrata& strata, const std::vector<ModuleVector>& probe, const Q& ratio,
                           int bmax, int nmax, bool expect_zero_upper, const std::string& label) {
  Report rep;
  rep.suite = "strata";
  long nonzero_upper = 0;
  for (const auto& v : probe)
    for (int b = 0; b <= bmax; ++b) {
      std::vector<ModuleVector> direct;
      for (int n = 0; n <= nmax; ++n) {
        const Q c = ratio * n;
        direct.push_back(strata.combined(b, c, v));
        rep.expect(direct.back() == strata.recombined(b, c, v),
                   [&] { return label + ": factorization b=" + std::to_string(b) + " n=" + std::to_string(n); });
      }
      rep.expect(strata.stratum(b, b, v) == strata.top_expected(b, v),
                 [&] { return label + ": top stratum b=" + std::to_string(b); });
      for (int s = 1; s <= b; ++s) {
        const bool zero = strata.stratum(b, s, v).is_zero();
        if (!zero) ++nonzero_upper;
        if (expect_zero_upper)
          rep.expect(zero, [&] { return label + ": stratum s=" + std::to_string(s) + " b=" + std::to_string(b) + " nonzero"; });
      }
      // The values at n = 0..b determine the strata.
      const std::vector<ModuleVector> first(direct.begin(), direct.begin() + std::min(b, nmax) + 1);
      if (static_cast<int>(first.size()) == b + 1) {
        const auto solved = vandermonde_extract(first, ratio);
        for (int s = 0; s <= b; ++s)
          rep.expect(solved[s] == strata.stratum(b, s, v),
                     [&] { return label + ": Vandermonde recovery b=" + std::to_string(b) + " s=" + std::to_string(s); });
      }
    }
  if (!expect_zero_upper)
    rep.expect(nonzero_upper > 0, [&] { return label + ": every s >= 1 stratum vanished on the probe set"; });
  rep.details = {{label, {{"nonzero_upper_strata", nonzero_upper}}}};
  return rep;
}

/// Vandermonde solve followed by forward evaluation on seeded random rationals.
inline Report check_vandermonde_roundtrip(std::uint64_t seed, int trials) {
  Report rep;
  rep.suite = "vandermonde";
  Lcg rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int b = static_cast<int>(rng.below(6));
    const Q ratio(static_cast<long>(rng.range(1, 5)), static_cast<unsigned long>(rng.range(1, 3)));
    std::vector<Q> xs(b + 1), ys(b + 1);
    for (auto& x : xs) x = Q(rng.range(-20, 20)) / rng.range(1, 7);
    for (int n = 0; n <= b; ++n)
      for (int s = 0; s <= b; ++s) ys[n] += pow_q(ratio * n, s) * xs[s];
    rep.expect(vandermonde_extract(ys, ratio) == xs, [&] { return "trial " + std::to_string(t); });
  }
  return rep;
}

inline Report check_lambda(const AlgebraConfig& cfg, std::uint64_t seed, int bmax = 5, int nmax = 5) {
  Report rep;
  rep.suite = "lambda";
  rep.identities = {"exp(-sum X_k z^k/k) for scalar X = (1 - z)^c", "sum_b Lambda_b z^b v = (1 - t0 z)^k v",
                    "Lambda_b v = 0 above the alpha^vee-eigenvalue", "Lambda_k Lambda_-k v = v",
                    "Lambda_b^{alpha,m,n} = sum_s (2n/<alpha,alpha>)^s Lambda_b^{alpha,m}(s)",
                    "Lambda_b^{alpha,m}(b) = ((-1)^b/b!) k_m^b", "Vandermonde solve recovers the strata"};
  // Scalar family X_k = c Id against the binomial series.
  for (const Q& c : {Q(3), Q(-2), Q(1, 2)}) {
    const auto fam = std::make_shared<const CommutingFamily>([c](int, const ModuleVector& v) { return c * v; });
    const OperatorSeries s(fam, kMaxSeriesDegree);
    const ModuleVector v(BasisKey{});
    for (int b = 0; b <= kMaxSeriesDegree; ++b)
      rep.expect(s.apply(b, v) == (b % 2 ? Q(-1) : Q(1)) * binomial(c, b) * v,
                 [&] { return "scalar family c=" + to_string(c) + " b=" + std::to_string(b); });
  }
  if (cfg.g().rank == 1) rep.absorb(check_binomial(cfg, 4));

  Json details = Json::object();
  const auto synth = fixtures::default_synthetic();
  const LambdaStrata syn(synth.family(), bmax);
  Report s1 = check_strata(syn, synth.basis(), Q(1), bmax, nmax, false, "synthetic");
  rep.absorb(s1);
  details.update(s1.details);
  if (cfg.g().rank == 1) {
    const Module t1(cfg, TypeISpec{2, {1}, {Q(1, 2), Q(-1, 3)}, {Q(1, 2), Q(-1, 3)}});
    for (const Exp2 m : {Exp2{1, 0}, Exp2{0, 1}, Exp2{1, -2}}) {
      const auto strata = lambda_s_decomposition(t1, {1}, m, bmax);
      std::vector<ModuleVector> probe;
      for (const auto& k : t1.basis(2)) probe.emplace_back(k);
      const std::string label = "type_i m=(" + std::to_string(m.m0) + "," + std::to_string(m.m1) + ")";
      Report r = check_strata(strata, probe, Q(1), bmax, nmax, true, label);
      rep.absorb(r);
      details.update(r.details);
    }
  }
  rep.absorb(check_vandermonde_roundtrip(seed, 200));
  rep.details = details;
  return rep;
}

// ---------------------------------------------------------------------------
// Heisenberg

struct HeisenbergFixture {
  std::string name;
  HeisenbergFunctional psi;
  int expected_r;
};

/// r = 0, 1, 2 come from (lambda, a, phi) triples; r = 3 and the second r = 2 case are direct tables
/// (over Q no triple has support exactly 3Z).
inline std::vector<HeisenbergFixture> heisenberg_fixtures(const AlgebraConfig& cfg) {
  const int l = cfg.g().rank;
  std::vector<int> top(l, 0);
  top[0] = 1;
  std::vector<HeisenbergFixture> out;
  out.push_back({"r0", psi_from_triple(cfg.base, {{std::vector<int>(l, 0), Q(1), Q(0)}}, {Q(1)}, {}, cfg.mu), 0});
  out.push_back({"r1", psi_from_triple(cfg.base, {{top, Q(0), Q(1)}}, {Q(1)}, {}, cfg.mu), 1});
  out.push_back({"r2", psi_from_triple(cfg.base, {{top, Q(0), Q(1)}, {top, Q(0), Q(1)}}, {Q(1), Q(-1)}, {}, cfg.mu), 2});
  HeisenbergFunctional t2;
  t2.base = cfg.base;
  for (int n : {-4, -2, 2, 4}) t2.direct_table[{HKind::K0, n, 0}] = Q(n);
  out.push_back({"r2_table", t2, 2});
  HeisenbergFunctional t3;
  t3.base = cfg.base;
  for (int n : {-6, -3, 3, 6}) t3.direct_table[{HKind::D0, n, 0}] = Q(1, n * n);
  out.push_back({"r3_table", t3, 3});
  return out;
}

inline Report check_heisenberg(const std::vector<HeisenbergFixture>& fixtures, int probe) {
  Report rep;
  rep.suite = "heisenberg";
  rep.identities = {"L(psi) = sum_{i<r} U(H).t1^i with r the support gcd", "psi(k1) = 0"};
  Json per = Json::array();
  for (const auto& f : fixtures) {
    const SupportReport s = support_gcd(f.psi, probe);
    rep.expect(s.r == f.expected_r, [&] {
      return f.name + ": r = " + std::to_string(s.r) + ", expected " + std::to_string(f.expected_r);
    });
    rep.expect(sgn(f.psi({HKind::K1, 0, 0})) == 0, [&] { return f.name + ": psi(k1) != 0"; });
    std::vector<HeisenbergComponent> comps;
    if (s.r == f.expected_r) comps = heisenberg_decompose(f.psi, s.r, probe);
    const std::size_t want = f.expected_r == 0 ? 1 : static_cast<std::size_t>(f.expected_r);
    rep.expect(comps.size() == want, [&] { return f.name + ": component count"; });
    Json cj = Json::array();
    for (const auto& c : comps) {
      rep.expect(c.spans, [&] { return f.name + ": coset " + std::to_string(c.coset) + " not spanned"; });
      cj.push_back({{"coset", c.coset}, {"reached", c.reached}, {"spans", c.spans}});
    }
    per.push_back({{"fixture", f.name},
                   {"r", s.r},
                   {"probed_to", s.probed_to},
                   {"components", cj},
                   {"from_triple", f.psi.from_triple}});
  }
  rep.details = {{"fixtures", per}};
  return rep;
}

// ---------------------------------------------------------------------------
// Exp-polynomials

/// Seeded exp-polynomial with 1..4 terms, exponents 0..2 and bases from a fixed rational pool.
inline ExpPolynomial random_exp_poly(Lcg& rng) {
  static const std::vector<Q> pool = {Q(1), Q(-1), Q(2), Q(-2), Q(1, 2), Q(3), Q(-1, 3), Q(2, 3)};
  ExpPolynomial f;
  const int terms = static_cast<int>(rng.range(1, 4));
  while (static_cast<int>(f.size()) < terms) {
    long num = rng.range(-9, 9);
    if (num == 0) num = 1;
    f.add(Q(num) / rng.range(1, 4), static_cast<int>(rng.range(0, 2)), pool[rng.below(pool.size())]);
  }
  return f;
}

struct TripleFixture {
  std::vector<DominantWeight> lambdas;
  std::vector<Q> as;
  ExpPolynomial phi;
  Q mu;
};

inline std::vector<TripleFixture> triple_fixtures(int rank) {
  std::vector<int> top(rank, 0), zero(rank, 0);
  top[0] = 1;
  std::vector<TripleFixture> out;
  out.push_back({{{top, Q(1, 2), Q(1)}}, {Q(2)}, ExpPolynomial({{Q(1), 1, Q(3)}}), Q(1)});
  out.push_back({{{top, Q(0), Q(2)}, {zero, Q(-1), Q(1)}}, {Q(1), Q(-1, 2)},
                 ExpPolynomial({{Q(2), 2, Q(1)}, {Q(-1), 0, Q(2)}, {Q(1), 0, Q(1)}}), Q(-3, 2)});
  out.push_back({{{top, Q(3), Q(1)}}, {Q(1)}, ExpPolynomial{}, Q(0)});
  return out;
}

/// psi_{lambda,a,phi} rebuilt through phi' = m psi(d_(0,m)) + mu m^2 psi(t1^m k0), a fit of phi',
/// the phi/phi' conversion, chi, and psi_{lambda,a} + psi_chi; compared on all degrees |n| <= range.
inline Report check_two_path(const AlgebraConfig& cfg, const TripleFixture& t, int range, const std::string& label) {
  Report rep;
  const auto direct = psi_from_triple(cfg.base, t.lambdas, t.as, t.phi, t.mu);
  std::map<long, Q> values;
  for (long m = -range; m <= range; ++m) {
    const Q psi_dm = m == 0 ? Q(0) : Q(-m) * direct({HKind::D0, static_cast<int>(m), 0});  // d_(0,m) = -m t1^m d0
    values[m] = Q(m) * psi_dm + t.mu * m * m * direct({HKind::K0, static_cast<int>(m), 0});
  }
  std::map<Q, int> roots = t.phi.root_orders();
  for (auto& [b, mult] : roots) ++mult;
  for (const auto& a : t.as) roots[a] = std::max(roots.count(a) ? roots[a] : 0, 3);
  std::vector<std::pair<Q, int>> root_list(roots.begin(), roots.end());
  const ExpPolynomial phi_prime = fit_from_values(values, root_list);
  const ExpPolynomial phi = phi_from_phi_prime(phi_prime, t.lambdas, t.as, t.mu);
  rep.expect(phi == t.phi, [&] { return label + ": phi recovered from phi' differs"; });
  const ExpPolynomial chi = chi_from_phi(t.lambdas, t.as, t.mu, phi);
  const auto la = psi_from_triple(cfg.base, t.lambdas, t.as, ExpPolynomial{}, t.mu, true);
  const auto pc = psi_chi(cfg.base, chi, range);
  for (int n = -range; n <= range; ++n)
    for (const auto& key : direct.keys_of_degree(n)) {
      const Q want = direct(key), got = la(key) + pc(key);
      rep.expect(want == got, [&] { return label + ": two-path mismatch at degree " + std::to_string(n); });
      if (key.kind == HKind::D0 && n != 0)
        rep.expect(want * n * n == t.phi(n), [&] { return label + ": m^2 psi(t1^m d0) != phi(m)"; });
    }
  return rep;
}

inline Report check_exppoly(const AlgebraConfig& cfg, std::uint64_t seed, int count) {
  Report rep;
  rep.suite = "exppoly";
  rep.identities = {"char_recurrence annihilates f", "fit_from_values inverts sampling",
                    "recurrence order is minimal", "psi_{lambda,a,phi} = psi_{lambda,a} + psi_chi"};
  Lcg rng(seed);
  for (int i = 0; i < count; ++i) {
    const ExpPolynomial f = random_exp_poly(rng);
    const auto p = char_recurrence(f);
    rep.expect(verify_recurrence(f, p, -20, 20), [&] { return "sample " + std::to_string(i) + ": recurrence fails"; });
    rep.expect(sgn(p.front()) != 0 && sgn(p.back()) != 0, [&] { return "sample " + std::to_string(i) + ": p0 pN = 0"; });
    std::map<long, Q> values;
    for (long n = -12; n <= 12; ++n) values[n] = f(n);
    std::vector<std::pair<Q, int>> roots;
    for (const auto& [b, m] : f.root_orders()) roots.emplace_back(b, m + 1);
    rep.expect(fit_from_values(values, roots) == f, [&] { return "sample " + std::to_string(i) + ": fit round trip"; });
    for (std::size_t r = 0; r < roots.size(); ++r) {
      auto shorter = roots;
      if (--shorter[r].second == 0) shorter.erase(shorter.begin() + static_cast<long>(r));
      bool rejected = false;
      try {
        fit_from_values(values, shorter);
      } catch (const SemanticError&) {
        rejected = true;
      }
      rep.expect(rejected, [&] { return "sample " + std::to_string(i) + ": shorter recurrence accepted"; });
    }
  }
  const auto fixtures = triple_fixtures(cfg.g().rank);
  for (std::size_t i = 0; i < fixtures.size(); ++i) rep.absorb(check_two_path(cfg, fixtures[i], 10, "triple " + std::to_string(i)));
  rep.details = {{"samples", count}, {"seed", seed}, {"triples", fixtures.size()}};
  return rep;
}

}  // namespace tek
