#pragma once

// Concrete modules: T_{U,lambda,gamma,gamma'} over g~0, T_{U,lambda,lambda',gamma,gamma'} over G,
// the realization R (x) U (x) V(lambda) over g~, Heisenberg modules L(psi) with d_1 shift b,
// loop modules C[t1^+-1] (x) V over g~, and lazy chi_A twists of all of these.

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "tek/error.hpp"
#include "tek/exp_poly.hpp"
#include "tek/rational.hpp"
#include "tek/simple_lie.hpp"
#include "tek/toroidal.hpp"

namespace tek {

/// Basis vector t^n (x) u_u (x) v_v, optionally inside a loop factor t1^loop.
/// Heisenberg vectors t1^p use n = (0, p).
struct BasisKey {
  Exp2 n;
  int u = 0;
  int v = 0;
  int loop = 0;

  auto operator<=>(const BasisKey&) const = default;
};

class ModuleVector {
 public:
  using Terms = std::map<BasisKey, Q>;

  ModuleVector() = default;
  ModuleVector(const BasisKey& k, Q c = 1) { add(k, c); }

  void add(const BasisKey& k, const Q& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Q coeff(const BasisKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Q(0) : it->second;
  }

  ModuleVector& operator+=(const ModuleVector& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  ModuleVector& operator-=(const ModuleVector& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  friend ModuleVector operator-(ModuleVector a, const ModuleVector& b) { return a -= b; }
  friend ModuleVector operator*(const Q& s, const ModuleVector& v) {
    ModuleVector out;
    if (sgn(s) == 0) return out;
    for (const auto& [k, c] : v.terms_) out.terms_.emplace(k, s * c);
    return out;
  }
  friend bool operator==(const ModuleVector&, const ModuleVector&) = default;

 private:
  Terms terms_;
};

// ---------------------------------------------------------------------------
// Heisenberg functionals

enum class HKind : std::uint8_t { Cartan = 0, K0 = 1, D0 = 2, K1 = 3 };

/// Basis of the Heisenberg algebra H^: t1^n (x) h_a (a a Cartan basis index of g), t1^n k0, t1^n d0, k1.
struct HKey {
  HKind kind = HKind::Cartan;
  int n = 0;
  int a = 0;

  auto operator<=>(const HKey&) const = default;
};

/// Evaluation table of psi on H^. Built from (lambda, a, phi, mu) or given directly;
/// direct entries override the formula, and psi(k1) = 0 always.
struct HeisenbergFunctional {
  std::shared_ptr<const SimpleAlgebra> base;
  std::vector<DominantWeight> lambdas;
  std::vector<Q> as;
  ExpPolynomial phi;
  Q mu;
  bool lambda_a_variant = false;  // t1^m d0 -> sum a_i^m (lambda_i(d0) + mu lambda_i(k0))
  bool from_triple = false;
  std::map<HKey, Q> direct_table;

  Q operator()(const HKey& key) const {
    if (key.kind == HKind::K1) return Q(0);
    auto it = direct_table.find(key);
    if (it != direct_table.end()) return it->second;
    if (!from_triple) return Q(0);
    Q out;
    switch (key.kind) {
      case HKind::Cartan:
        for (std::size_t s = 0; s < as.size(); ++s)
          out += base->cartan_value(key.a, lambdas[s].coords) * pow_q(as[s], key.n);
        return out;
      case HKind::K0:
        for (std::size_t s = 0; s < as.size(); ++s) out += lambdas[s].k0_value * pow_q(as[s], key.n);
        return out;
      case HKind::D0:
        if (key.n == 0) {
          for (const auto& l : lambdas) out += l.d0_value;
          return out;
        }
        if (lambda_a_variant) {
          for (std::size_t s = 0; s < as.size(); ++s)
            out += pow_q(as[s], key.n) * (lambdas[s].d0_value + mu * lambdas[s].k0_value);
          return out;
        }
        return phi(key.n) / (static_cast<long>(key.n) * key.n);
      case HKind::K1:
        break;
    }
    return out;
  }

  std::vector<int> cartan_indices() const {
    std::vector<int> out;
    for (int a = 0; a < base->dim(); ++a)
      if (base->is_cartan(a)) out.push_back(a);
    return out;
  }

  /// Every basis key of degree n (k1 only in degree 0).
  std::vector<HKey> keys_of_degree(int n) const {
    std::vector<HKey> out;
    for (int a : cartan_indices()) out.push_back({HKind::Cartan, n, a});
    out.push_back({HKind::K0, n, 0});
    out.push_back({HKind::D0, n, 0});
    if (n == 0) out.push_back({HKind::K1, 0, 0});
    return out;
  }
};

/// psi_{lambda,a,phi}, or psi_{lambda,a} when `lambda_a_variant` is set (phi then unused).
inline HeisenbergFunctional psi_from_triple(std::shared_ptr<const SimpleAlgebra> base,
                                            std::vector<DominantWeight> lambdas, std::vector<Q> as,
                                            ExpPolynomial phi, Q mu, bool lambda_a_variant = false) {
  for (const auto& l : lambdas)
    if (static_cast<int>(l.coords.size()) != base->rank) throw SemanticError("weight rank mismatch");
  check_triple_conditions(lambdas, as, phi);
  HeisenbergFunctional psi;
  psi.base = std::move(base);
  psi.lambdas = std::move(lambdas);
  psi.as = std::move(as);
  psi.phi = std::move(phi);
  psi.mu = std::move(mu);
  psi.lambda_a_variant = lambda_a_variant;
  psi.from_triple = true;
  return psi;
}

/// psi_chi: zero except t1^m d0 -> -chi(m) / m^2.
inline HeisenbergFunctional psi_chi(std::shared_ptr<const SimpleAlgebra> base, const ExpPolynomial& chi, int max_degree) {
  HeisenbergFunctional psi;
  psi.base = std::move(base);
  for (int m = -max_degree; m <= max_degree; ++m)
    if (m != 0) psi.direct_table[{HKind::D0, m, 0}] = -chi(m) / (static_cast<long>(m) * m);
  return psi;
}

/// Default probe window for support_gcd.
inline int default_probe_range(const HeisenbergFunctional& psi) {
  if (!psi.from_triple) {
    int w = 24;
    for (const auto& [k, c] : psi.direct_table) w = std::max(w, std::abs(k.n));
    return w;
  }
  mpz_class l = 1;
  auto fold = [&](const Q& q) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t()); };
  for (const auto& a : psi.as) fold(a);
  for (const auto& t : psi.phi.terms()) fold(t.b);
  const long terms = static_cast<long>(psi.phi.size() + psi.as.size());
  mpz_class w = 2 * terms * l;
  return w > 24 ? (w.fits_sint_p() && w < 4096 ? static_cast<int>(w.get_si()) : 4096) : 24;
}

struct SupportReport {
  int r = 0;
  int probed_to = 0;
  std::vector<int> support;  // nonzero degrees within the window
};

/// gcd of the nonzero degrees n, |n| <= probe, on which psi does not vanish identically.
inline SupportReport support_gcd(const HeisenbergFunctional& psi, std::optional<int> probe = std::nullopt) {
  SupportReport rep;
  rep.probed_to = probe.value_or(default_probe_range(psi));
  if (rep.probed_to < 1) throw SemanticError("probe range must be positive");
  for (int n = -rep.probed_to; n <= rep.probed_to; ++n) {
    if (n == 0) continue;
    for (const auto& key : psi.keys_of_degree(n))
      if (sgn(psi(key)) != 0) {
        rep.support.push_back(n);
        rep.r = std::gcd(rep.r, std::abs(n));
        break;
      }
  }
  return rep;
}

struct HeisenbergComponent {
  int coset = 0;  // i in i + rZ
  int reached = 0;
  bool spans = false;
};

/// Spanning sweep: from each t1^i, repeated H^ actions must reach exactly (i + rZ) within the window.
inline std::vector<HeisenbergComponent> heisenberg_decompose(const HeisenbergFunctional& psi, int r,
                                                             std::optional<int> probe = std::nullopt) {
  const SupportReport rep = support_gcd(psi, probe);
  if (rep.r != r) throw CheckFailure("heisenberg_decompose: r disagrees with the support gcd");
  const int w = rep.probed_to;
  if (r == 0) return {{0, 1, rep.support.empty()}};
  int max_step = 0;
  for (int s : rep.support) max_step = std::max(max_step, std::abs(s));
  const int outer = w + max_step;
  std::vector<HeisenbergComponent> out;
  for (int i = 0; i < r; ++i) {
    std::set<int> seen{i};
    std::deque<int> queue{i};
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      for (int s : rep.support) {
        const int q = p + s;
        if (q < -outer || q > outer || seen.count(q)) continue;
        seen.insert(q);
        queue.push_back(q);
      }
    }
    HeisenbergComponent c{i, 0, true};
    for (int p = -w; p <= w; ++p) {
      const bool in_coset = ((p - i) % r + r) % r == 0;
      const bool hit = seen.count(p) > 0;
      if (hit) ++c.reached;
      if (hit != in_coset) c.spans = false;
    }
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Module specifications

using Vec2 = std::array<Q, 2>;

struct TypeISpec {
  int dim_u = 1;
  std::vector<int> lambda;  // Dynkin labels, nonzero
  Vec2 gamma{}, gamma_p{};
};

struct GModSpec {
  int dim_u = 1;
  std::vector<int> lambda;
  std::vector<Q> lambda_p;  // values on h_1..h_l
  Vec2 gamma{}, gamma_p{};
};

struct RealizationSpec {
  int dim_u = 1;
  std::vector<int> lambda;
  Vec2 gamma{}, gamma_p{};
  bool allow_zero_weight = false;  // V(0) is still a module; the classification excludes it
};

struct HeisenbergSpec {
  HeisenbergFunctional psi;
  Q b;
};

/// Loop module over the realization restricted to g^ (everything but d_1).
struct LoopSpec {
  RealizationSpec inner;
};

using ModuleVariant = std::variant<TypeISpec, GModSpec, RealizationSpec, HeisenbergSpec, LoopSpec>;

enum class ModuleKind { TypeI, GMod, Realization, Heisenberg, Loop };

/// Weight of a homogeneous vector: values on the Cartan basis h_1..h_l, then on d_0, d_1.
struct ModuleWeight {
  std::vector<Q> h;
  Q d0, d1;

  friend bool operator==(const ModuleWeight&, const ModuleWeight&) = default;
  friend bool operator<(const ModuleWeight& a, const ModuleWeight& b) {
    return std::tie(a.h, a.d0, a.d1) < std::tie(b.h, b.d0, b.d1);
  }
};

class Module {
 public:
  Module(AlgebraConfig cfg, ModuleVariant spec) : cfg_(std::move(cfg)), spec_(std::move(spec)) { build(); }

  ModuleKind kind() const { return static_cast<ModuleKind>(spec_.index()); }
  const ModuleVariant& spec() const { return spec_; }
  const AlgebraConfig& config() const { return cfg_; }
  const std::vector<Mat2>& twists() const { return twists_; }
  const FiniteModule* u_module() const { return u_.get(); }
  const FiniteModule* v_module() const { return v_.get(); }

  /// W_A: the same module with x acting as chi_A(x).
  Module twisted(const Mat2& a) const {
    if (a.det() != 1 && a.det() != -1) throw SemanticError("twist matrix must have determinant +-1");
    Module out = *this;
    out.twists_.push_back(a);
    return out;
  }

  /// x.w for x in the algebra the construction is defined over (GMod: through g~0 -> G).
  ModuleVector act(const AlgebraElement& x, const ModuleVector& w) const {
    AlgebraElement y = x;
    for (auto it = twists_.rbegin(); it != twists_.rend(); ++it) y = chi_A(cfg_, *it, y);
    ModuleVector out;
    for (const auto& [s, c] : y.terms())
      for (const auto& [k, d] : w.terms()) act_basis(s, k, c * d, out);
    return out;
  }

  /// G-element action on T_{U,lambda,lambda',gamma,gamma'} (untwisted).
  ModuleVector act_g(const GElement& x, const ModuleVector& w) const {
    const auto* g = std::get_if<GModSpec>(&spec_);
    if (!g) throw SemanticError("G-elements act only on GMod specs");
    if (!twists_.empty()) throw SemanticError("G-action is not defined on twisted specs");
    ModuleVector out;
    for (const auto& [k, d] : w.terms()) {
      for (const auto& [key, c] : x.h) {
        const auto& [m, a] = key;
        Q val = cfg_.g().cartan_value(a, g->lambda);
        if (m.is_zero()) val += cartan_lambda_p(*g, a);
        out.add({k.n + m, k.u, 0, 0}, c * d * val);
      }
      for (int i = 0; i < 2; ++i) out.add(k, x.s.d[i] * d * (k.n[i] + g->gamma_p[i]));
      for (const auto& [m, c] : x.s.dm) act_skew_u(m, k, c * d, g->gamma, out);
    }
    return out;
  }

  /// Basis vectors with |n_i| <= box (Heisenberg: powers in [-box, box]; loop: loop power and n
  /// both bounded).
  std::vector<BasisKey> basis(int box) const {
    std::vector<BasisKey> out;
    const int du = u_ ? u_->dimension : 1;
    const int dv = v_ ? v_->dimension : 1;
    if (kind() == ModuleKind::Heisenberg) {
      for (int p = -box; p <= box; ++p) out.push_back({{0, p}, 0, 0, 0});
      return out;
    }
    const int lmin = kind() == ModuleKind::Loop ? -box : 0, lmax = kind() == ModuleKind::Loop ? box : 0;
    for (int l = lmin; l <= lmax; ++l)
      for (int n0 = -box; n0 <= box; ++n0)
        for (int n1 = -box; n1 <= box; ++n1)
          for (int u = 0; u < du; ++u)
            for (int v = 0; v < dv; ++v) out.push_back({{n0, n1}, u, v, l});
    return out;
  }

  /// Algebra basis symbols (exponents in the box) acting on this construction.
  std::vector<Sym> algebra_basis(int box) const {
    std::vector<Sym> out;
    for (const auto& s : basis_in_box(cfg_, box))
      if (in_domain(s)) out.push_back(s);
    return out;
  }

  bool in_domain(const Sym& s) const {
    switch (kind()) {
      case ModuleKind::TypeI:
      case ModuleKind::GMod:
        return s.kind != Kind::Loop || cfg_.g().is_cartan(s.idx);
      case ModuleKind::Realization:
      case ModuleKind::Loop:
        return true;
      case ModuleKind::Heisenberg:
        switch (s.kind) {
          case Kind::Loop:
            return s.m.m0 == 0 && cfg_.g().is_cartan(s.idx);
          case Kind::K:
            return s.m.m0 == 0;
          case Kind::D:
            return true;
          case Kind::Skew:
            return s.m.m0 == 0;
        }
    }
    return false;
  }

  /// Cartan, d_0 and d_1 eigenvalues of w; throws SemanticError if w is not a weight vector.
  ModuleWeight weight_of(const ModuleVector& w) const {
    if (w.is_zero()) throw SemanticError("zero vector has no weight");
    ModuleWeight out;
    auto eigen = [&](const AlgebraElement& x) {
      ModuleVector xw = act(x, w);
      const auto& [k0, c0] = *w.terms().begin();
      Q lam = xw.coeff(k0) / c0;
      if (!(xw == lam * w)) throw SemanticError("vector is not homogeneous");
      return lam;
    };
    for (int a = 0; a < cfg_.g().dim(); ++a)
      if (cfg_.g().is_cartan(a)) out.h.push_back(eigen(AlgebraElement(Sym::loop({}, a))));
    out.d0 = eigen(AlgebraElement(Sym::d(0)));
    out.d1 = eigen(AlgebraElement(Sym::d(1)));
    return out;
  }

  /// Weight-space dimensions over the basis vectors in the box.
  std::map<ModuleWeight, int> weight_table(int box) const {
    std::map<ModuleWeight, int> out;
    for (const auto& k : basis(box)) ++out[weight_of(ModuleVector(k))];
    return out;
  }

  /// Scalars by which k_0 and k_1 act on w (which must be an eigenvector for both).
  Vec2 central_charge(const ModuleVector& w) const {
    Vec2 c;
    for (int j = 0; j < 2; ++j) {
      ModuleVector kw = act(AlgebraElement(Sym::k(j)), w);
      const auto& [k0, c0] = *w.terms().begin();
      c[j] = kw.coeff(k0) / c0;
      if (!(kw == c[j] * w)) throw SemanticError("central element does not act by a scalar");
    }
    return c;
  }

 private:
  void build() {
    const SimpleAlgebra& g = cfg_.g();
    auto check_lambda = [&](const std::vector<int>& l, bool allow_zero) {
      if (static_cast<int>(l.size()) != g.rank) throw SemanticError("lambda has the wrong rank");
      for (int c : l)
        if (c < 0) throw SemanticError("lambda must be dominant");
      if (!allow_zero && std::all_of(l.begin(), l.end(), [](int c) { return c == 0; }))
        throw SemanticError("lambda must be nonzero");
    };
    auto check_u = [&](int d) {
      if (d < 1) throw SemanticError("dim U must be positive");
      u_ = std::make_shared<const FiniteModule>(sl2_module(d));
    };
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, TypeISpec>) {
            check_lambda(s.lambda, false);
            check_u(s.dim_u);
          } else if constexpr (std::is_same_v<T, GModSpec>) {
            check_lambda(s.lambda, true);
            if (static_cast<int>(s.lambda_p.size()) != g.rank) throw SemanticError("lambda' has the wrong rank");
            check_u(s.dim_u);
          } else if constexpr (std::is_same_v<T, RealizationSpec>) {
            check_lambda(s.lambda, s.allow_zero_weight);
            check_u(s.dim_u);
            v_ = std::make_shared<const FiniteModule>(irreducible_module(g, weight_from_labels(s.lambda)));
          } else if constexpr (std::is_same_v<T, LoopSpec>) {
            check_lambda(s.inner.lambda, s.inner.allow_zero_weight);
            check_u(s.inner.dim_u);
            v_ = std::make_shared<const FiniteModule>(irreducible_module(g, weight_from_labels(s.inner.lambda)));
          } else {
            if (!s.psi.base || s.psi.base->rank != g.rank) throw SemanticError("functional over a different algebra");
          }
        },
        spec_);
  }

  Q cartan_lambda_p(const GModSpec& g, int a) const {
    int i = 0;
    for (int b = 0; b < a; ++b)
      if (cfg_.g().is_cartan(b)) ++i;
    return g.lambda_p[i];
  }

  // d_m.(t^n (x) u) = t^{m+n} (x) (M_m u + det(m; gamma + n) u),
  // M_m = -m0 m1 h + m0^2 e - m1^2 f.
  void act_skew_u(Exp2 m, const BasisKey& k, const Q& c, const Vec2& gamma, ModuleVector& out) const {
    const BasisKey target{k.n + m, 0, k.v, k.loop};
    const Q det = m.m0 * (gamma[1] + k.n.m1) - (gamma[0] + k.n.m0) * m.m1;
    const long coef[3] = {static_cast<long>(m.m0) * m.m0, -static_cast<long>(m.m0) * m.m1,
                          -static_cast<long>(m.m1) * m.m1};  // e, h, f
    for (int r = 0; r < u_->dimension; ++r) {
      Q val = r == k.u ? det : Q(0);
      for (int g = 0; g < 3; ++g)
        if (coef[g] != 0) val += coef[g] * u_->action[g](r, k.u);
      if (sgn(val) != 0) out.add({target.n, r, target.v, target.loop}, c * val);
    }
  }

  void act_realization(const RealizationSpec& s, const Sym& x, const BasisKey& k, const Q& c, ModuleVector& out) const {
    switch (x.kind) {
      case Kind::Loop: {
        const Matrix& mat = v_->action[x.idx];
        for (int r = 0; r < v_->dimension; ++r)
          if (sgn(mat(r, k.v)) != 0) out.add({k.n + x.m, k.u, r, k.loop}, c * mat(r, k.v));
        return;
      }
      case Kind::K:
        return;
      case Kind::D:
        out.add(k, c * (k.n[x.idx] + s.gamma_p[x.idx]));
        return;
      case Kind::Skew:
        act_skew_u(x.m, k, c, s.gamma, out);
        return;
    }
  }

  void act_basis(const Sym& x, const BasisKey& k, const Q& c, ModuleVector& out) const {
    if (!in_domain(x)) throw SemanticError("element lies outside the algebra acting on this module");
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, TypeISpec> || std::is_same_v<T, GModSpec>) {
            switch (x.kind) {
              case Kind::Loop: {
                Q val = cfg_.g().cartan_value(x.idx, s.lambda);
                if constexpr (std::is_same_v<T, GModSpec>)
                  if (x.m.is_zero()) val += cartan_lambda_p(s, x.idx);
                out.add({k.n + x.m, k.u, 0, 0}, c * val);
                return;
              }
              case Kind::K:
                return;
              case Kind::D:
                out.add(k, c * (k.n[x.idx] + s.gamma_p[x.idx]));
                return;
              case Kind::Skew:
                act_skew_u(x.m, k, c, s.gamma, out);
                return;
            }
          } else if constexpr (std::is_same_v<T, RealizationSpec>) {
            act_realization(s, x, k, c, out);
          } else if constexpr (std::is_same_v<T, LoopSpec>) {
            if (x.kind == Kind::D && x.idx == 1) {
              out.add(k, c * k.loop);
              return;
            }
            ModuleVector inner;
            act_realization(s.inner, x, k, c, inner);
            for (const auto& [ik, ic] : inner.terms()) out.add({ik.n, ik.u, ik.v, k.loop + x.m.m1}, ic);
          } else {
            act_heisenberg(s, x, k, c, out);
          }
        },
        spec_);
  }

  void act_heisenberg(const HeisenbergSpec& s, const Sym& x, const BasisKey& k, const Q& c, ModuleVector& out) const {
    const int p = k.n.m1;
    auto emit = [&](int deg, const Q& val) {
      if (sgn(val) != 0) out.add({{0, p + deg}, 0, 0, 0}, c * val);
    };
    switch (x.kind) {
      case Kind::Loop:
        return emit(x.m.m1, s.psi({HKind::Cartan, x.m.m1, x.idx}));
      case Kind::K:
        if (x.idx == 1) return;  // psi(k1) = 0
        return emit(x.m.m1, s.psi({HKind::K0, x.m.m1, 0}));
      case Kind::D:
        if (x.idx == 1) return emit(0, Q(p) + s.b);
        return emit(0, s.psi({HKind::D0, 0, 0}));
      case Kind::Skew:
        // d_{(0,n)} = -n t1^n d0
        return emit(x.m.m1, Q(-x.m.m1) * s.psi({HKind::D0, x.m.m1, 0}));
    }
  }

  AlgebraConfig cfg_;
  ModuleVariant spec_;
  std::vector<Mat2> twists_;
  std::shared_ptr<const FiniteModule> u_, v_;
};

/// Heisenberg action of a single basis element on t1^m: (scalar, new power).
inline std::pair<Q, int> heisenberg_act(const HeisenbergFunctional& psi, const HKey& h, int power) {
  return {psi(h), power + h.n};
}

/// Loop-module action of an element homogeneous of t1-degree m (d_1 counted as degree 0).
inline ModuleVector loop_act(const Module& mod, const AlgebraElement& x, const ModuleVector& w) {
  if (mod.kind() != ModuleKind::Loop) throw SemanticError("loop_act requires a loop module");
  std::optional<int> deg;
  for (const auto& [s, c] : x.terms()) {
    const int d = s.kind == Kind::D ? 0 : s.m.m1;
    if (deg && *deg != d) throw SemanticError("element is not homogeneous for the t1-grading");
    deg = d;
  }
  return mod.act(x, w);
}

/// Least k <= bound with x^k.w = 0; nullopt when the bound is reached first.
inline std::optional<int> nilpotence_index(const Module& mod, const AlgebraElement& x, const ModuleVector& w,
                                           int bound) {
  ModuleVector cur = w;
  for (int k = 0; k <= bound; ++k) {
    if (cur.is_zero()) return k;
    if (k == bound) break;
    cur = mod.act(x, cur);
  }
  return std::nullopt;
}

/// Rewrites every term of x through g~0 -> G (K is dropped); x must lie in g~0.
inline GElement to_g_element(const AlgebraConfig& cfg, const AlgebraElement& x) {
  GElement out;
  for (const auto& [s, c] : x.terms()) {
    switch (s.kind) {
      case Kind::Loop:
        if (!cfg.g().is_cartan(s.idx)) throw SemanticError("element lies outside g~0");
        out.add_h(s.m, s.idx, c);
        break;
      case Kind::K:
        break;
      case Kind::D:
        out.s.d[s.idx] += c;
        break;
      case Kind::Skew:
        out.s.add_dm(s.m, c);
        break;
    }
  }
  return out;
}

}  // namespace tek
