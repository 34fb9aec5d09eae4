#pragma once

// The nullity-2 toroidal Lie algebra g(mu) = (R (x) g) + K + S over Q, where
// R = Q[t0^+-1, t1^+-1], K = Omega^1_R / dR and S is spanned by d_0, d_1 and the
// skew derivations d_m = m0 t^m d1 - m1 t^m d0.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tek/error.hpp"
#include "tek/rational.hpp"
#include "tek/simple_lie.hpp"

namespace tek {

struct Exp2 {
  int m0 = 0, m1 = 0;

  auto operator<=>(const Exp2&) const = default;
  bool is_zero() const { return m0 == 0 && m1 == 0; }
  int operator[](int i) const { return i == 0 ? m0 : m1; }
  friend Exp2 operator+(Exp2 a, Exp2 b) { return {a.m0 + b.m0, a.m1 + b.m1}; }
  friend Exp2 operator-(Exp2 a, Exp2 b) { return {a.m0 - b.m0, a.m1 - b.m1}; }
  friend Exp2 operator-(Exp2 a) { return {-a.m0, -a.m1}; }
  friend Exp2 operator*(int k, Exp2 a) { return {k * a.m0, k * a.m1}; }
};

/// det(m; n) = m0 n1 - n0 m1.
inline long det2(Exp2 m, Exp2 n) {
  return static_cast<long>(m.m0) * n.m1 - static_cast<long>(n.m0) * m.m1;
}

enum class Kind : std::uint8_t { Loop = 0, K = 1, D = 2, Skew = 3 };

/// One basis symbol: t^m (x) x_idx, t^m k_idx, d_idx (m = 0), or d_m (m != 0).
/// Ordered canonically by (kind, idx, m0, m1).
struct Sym {
  Kind kind = Kind::Loop;
  int idx = 0;
  Exp2 m;

  auto operator<=>(const Sym&) const = default;

  static Sym loop(Exp2 m, int a) { return {Kind::Loop, a, m}; }
  static Sym k(int j, Exp2 m = {}) { return {Kind::K, j, m}; }
  static Sym d(int i) { return {Kind::D, i, {}}; }
  static Sym skew(Exp2 m) {
    if (m.is_zero()) throw SemanticError("d_m requires m != 0");
    return {Kind::Skew, 0, m};
  }
};

/// Class in K = Omega^1_R / dR, keyed by exponent; value (a, b) means a t^m k0 + b t^m k1.
/// Normal form: m1 != 0 keeps only k0, m1 = 0 != m0 keeps only k1, m = 0 keeps both.
using KClass = std::map<Exp2, std::pair<Q, Q>>;

/// Reduces an arbitrary finite combination modulo the exact forms m0 t^m k0 + m1 t^m k1.
inline KClass k_normalize(const KClass& raw) {
  KClass out;
  for (const auto& [m, ab] : raw) {
    Q a = ab.first, b = ab.second;
    if (m.m1 != 0) {
      a -= b * Q(m.m0) / m.m1;  // t^m k1 = -(m0/m1) t^m k0
      b = 0;
    } else if (m.m0 != 0) {
      a = 0;  // t^m k0 = -(m1/m0) t^m k1 = 0
    }
    if (sgn(a) == 0 && sgn(b) == 0) continue;
    auto& slot = out[m];
    slot.first += a;
    slot.second += b;
  }
  for (auto it = out.begin(); it != out.end();)
    it = (sgn(it->second.first) == 0 && sgn(it->second.second) == 0) ? out.erase(it) : std::next(it);
  return out;
}

/// Finite rational combination of basis symbols, K-part kept in normal form.
class AlgebraElement {
 public:
  using Terms = std::map<Sym, Q>;

  AlgebraElement() = default;
  AlgebraElement(Sym s, Q c = 1) { add(s, c); }

  /// Adds c * s, reducing K symbols to the normal form.
  void add(const Sym& s, const Q& c) {
    if (sgn(c) == 0) return;
    if (s.kind == Kind::K) {
      const Exp2 p = s.m;
      if (p.m1 != 0) {
        if (s.idx == 0) return put({Kind::K, 0, p}, c);
        return put({Kind::K, 0, p}, -c * p.m0 / p.m1);
      }
      if (p.m0 != 0) {
        if (s.idx == 1) put({Kind::K, 1, p}, c);
        return;
      }
    }
    put(s, c);
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Q coeff(const Sym& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Q(0) : it->second;
  }

  std::map<std::pair<Exp2, int>, Q> loop_part() const {
    std::map<std::pair<Exp2, int>, Q> out;
    for (const auto& [s, c] : terms_)
      if (s.kind == Kind::Loop) out[{s.m, s.idx}] = c;
    return out;
  }
  KClass k_part() const {
    KClass out;
    for (const auto& [s, c] : terms_)
      if (s.kind == Kind::K) (s.idx == 0 ? out[s.m].first : out[s.m].second) = c;
    return out;
  }
  std::array<Q, 2> degree_ders() const { return {coeff(Sym::d(0)), coeff(Sym::d(1))}; }
  std::map<Exp2, Q> skew_part() const {
    std::map<Exp2, Q> out;
    for (const auto& [s, c] : terms_)
      if (s.kind == Kind::Skew) out[s.m] = c;
    return out;
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (const auto& [s, c] : o.terms_) put(s, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    for (const auto& [s, c] : o.terms_) put(s, -c);
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Q& s, const AlgebraElement& a) {
    AlgebraElement r;
    if (sgn(s) == 0) return r;
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, s * c);
    return r;
  }
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  void put(const Sym& s, const Q& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  Terms terms_;
};

inline AlgebraElement k_class_element(const KClass& k) {
  AlgebraElement x;
  for (const auto& [m, ab] : k) {
    x.add(Sym::k(0, m), ab.first);
    x.add(Sym::k(1, m), ab.second);
  }
  return x;
}

struct AlgebraConfig {
  std::shared_ptr<const SimpleAlgebra> base;
  Q mu;

  const SimpleAlgebra& g() const { return *base; }
};

inline AlgebraConfig make_config(int rank, Q mu) {
  return {std::make_shared<const SimpleAlgebra>(build_type_a(rank)), std::move(mu)};
}

namespace detail {

inline void check_sym(const AlgebraConfig& cfg, const Sym& s) {
  if (s.kind == Kind::Loop && (s.idx < 0 || s.idx >= cfg.g().dim()))
    throw SemanticError("loop symbol refers to a basis index outside the base algebra");
  if ((s.kind == Kind::K || s.kind == Kind::D) && (s.idx < 0 || s.idx > 1))
    throw SemanticError("k_j / d_j index must be 0 or 1");
  if (s.kind == Kind::D && !s.m.is_zero()) throw SemanticError("d_0, d_1 carry no exponent");
  if (s.kind == Kind::Skew && s.m.is_zero()) throw SemanticError("d_m requires m != 0");
}

// sum_a m_a t^p k_a
template <class Sink>
void emit_form_sum(Exp2 m, Exp2 p, const Q& c, Sink& sink) {
  if (m.m0 != 0) sink(Sym::k(0, p), c * m.m0);
  if (m.m1 != 0) sink(Sym::k(1, p), c * m.m1);
}

// [a, b] for an ordered pair where a is d_i or d_m and b is anything.
template <class Sink>
void bracket_derivation(const AlgebraConfig& cfg, const Sym& a, const Sym& b, const Q& c, Sink& sink) {
  if (a.kind == Kind::D) {
    const int i = a.idx;
    switch (b.kind) {
      case Kind::Loop:
      case Kind::K:
      case Kind::Skew:
        if (b.m[i] != 0) sink(b, c * b.m[i]);
        return;
      case Kind::D:
        return;
    }
  }
  const Exp2 m = a.m;
  switch (b.kind) {
    case Kind::Loop: {
      long det = det2(m, b.m);
      if (det != 0) sink(Sym::loop(m + b.m, b.idx), c * det);
      return;
    }
    case Kind::K: {
      const Exp2 p = m + b.m;
      long det = det2(m, b.m);
      if (det != 0) sink(Sym::k(b.idx, p), c * det);
      long f = b.idx == 1 ? m.m0 : -m.m1;
      if (f != 0) emit_form_sum(m, p, c * f, sink);
      return;
    }
    case Kind::D:
      // [d_m, d_i] = -m_i d_m
      if (m[b.idx] != 0) sink(a, -c * m[b.idx]);
      return;
    case Kind::Skew: {
      long det = det2(m, b.m);
      if (det == 0) return;
      const Exp2 p = m + b.m;
      if (p.is_zero()) throw CheckFailure("d_{m+n} with m+n = 0 but det != 0");
      sink(Sym::skew(p), c * det);
      if (sgn(cfg.mu) != 0) emit_form_sum(m, p, c * cfg.mu * (det * det), sink);
      return;
    }
  }
}

}  // namespace detail

/// c * [a, b] on basis symbols, streamed into `sink(Sym, Q)` before K normalization.
template <class Sink>
void bracket_symbols(const AlgebraConfig& cfg, const Sym& a, const Sym& b, const Q& c, Sink& sink) {
  const bool a_der = a.kind == Kind::D || a.kind == Kind::Skew;
  const bool b_der = b.kind == Kind::D || b.kind == Kind::Skew;
  if (a_der) return detail::bracket_derivation(cfg, a, b, c, sink);
  if (b_der) return detail::bracket_derivation(cfg, b, a, -c, sink);
  if (a.kind == Kind::K || b.kind == Kind::K) return;  // K is central in the core
  const SimpleAlgebra& g = cfg.g();
  const Exp2 p = a.m + b.m;
  for (const auto& [k, s] : g.structure[a.idx][b.idx]) sink(Sym::loop(p, k), c * s);
  const Q& f = g.form(a.idx, b.idx);
  if (sgn(f) != 0) detail::emit_form_sum(a.m, p, c * f, sink);
}

inline AlgebraElement bracket(const AlgebraConfig& cfg, const Sym& a, const Sym& b) {
  detail::check_sym(cfg, a);
  detail::check_sym(cfg, b);
  AlgebraElement out;
  auto sink = [&](const Sym& s, const Q& c) { out.add(s, c); };
  bracket_symbols(cfg, a, b, Q(1), sink);
  return out;
}

inline AlgebraElement bracket(const AlgebraConfig& cfg, const AlgebraElement& x, const AlgebraElement& y) {
  for (const auto& [s, c] : x.terms()) detail::check_sym(cfg, s);
  for (const auto& [s, c] : y.terms()) detail::check_sym(cfg, s);
  AlgebraElement out;
  auto sink = [&](const Sym& s, const Q& c) { out.add(s, c); };
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) bracket_symbols(cfg, a, b, ca * cb, sink);
  return out;
}

/// Invariant form on basis symbols. Symbols may be unnormalized K symbols.
inline Q invariant_form(const AlgebraConfig& cfg, const Sym& a, const Sym& b) {
  if (a.kind == Kind::Loop && b.kind == Kind::Loop)
    return (a.m + b.m).is_zero() ? cfg.g().form(a.idx, b.idx) : Q(0);
  if (b.kind == Kind::D || b.kind == Kind::Skew) {
    if (a.kind == Kind::K) return invariant_form(cfg, b, a);
  }
  if (b.kind != Kind::K) return Q(0);
  if (a.kind == Kind::D) return (b.m.is_zero() && a.idx == b.idx) ? Q(1) : Q(0);
  if (a.kind == Kind::Skew) {
    if (!(a.m + b.m).is_zero()) return Q(0);
    return Q(b.idx == 1 ? a.m.m0 : -a.m.m1);
  }
  return Q(0);
}

inline Q invariant_form(const AlgebraConfig& cfg, const AlgebraElement& x, const AlgebraElement& y) {
  Q out;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      Q v = invariant_form(cfg, a, b);
      if (sgn(v) != 0) out += ca * cb * v;
    }
  return out;
}

/// Root label of a basis symbol with its membership in both triangular decompositions.
struct RootLabel {
  Root finite_part;
  int m0 = 0, m1 = 0;
  bool isotropic = true;
  int type_i_sign = 0;   // sign of the finite part against the positive roots of g
  int type_ii_sign = 0;  // sign of alpha + m0 delta_0 in the affine root system; 0 = degree-zero part

  friend bool operator==(const RootLabel&, const RootLabel&) = default;
};

inline RootLabel root_of(const AlgebraConfig& cfg, const Sym& s) {
  detail::check_sym(cfg, s);
  RootLabel r;
  r.finite_part = Root(cfg.g().rank, 0);
  if (s.kind == Kind::Loop) r.finite_part = cfg.g().roots[s.idx];
  r.m0 = s.m.m0;
  r.m1 = s.m.m1;
  int h = root_height(r.finite_part);
  r.isotropic = h == 0 && std::all_of(r.finite_part.begin(), r.finite_part.end(), [](int c) { return c == 0; });
  r.type_i_sign = r.isotropic ? 0 : (h > 0 ? 1 : -1);
  r.type_ii_sign = r.m0 != 0 ? (r.m0 > 0 ? 1 : -1) : r.type_i_sign;
  return r;
}

/// k_{m,k} = m'_0 t^{km} k0 + m'_1 t^{km} k1.
inline KClass k_m(Exp2 m, int k = 1) {
  KClass raw;
  if (m.m1 != 0) {
    raw[k * m] = {Q(1, 1) / m.m1, Q(0)};
  } else if (m.m0 != 0) {
    raw[k * m] = {Q(0), Q(-1) / m.m0};
  }
  return k_normalize(raw);
}

/// [d_m, k_n] through the general bracket, checked against det(m; n) k_{m+n}.
inline KClass bracket_d_k(const AlgebraConfig& cfg, Exp2 m, Exp2 n) {
  if (n.is_zero()) throw SemanticError("k_n requires n != 0");
  AlgebraElement kn = k_class_element(k_m(n));
  AlgebraElement lhs = m.is_zero() ? AlgebraElement{} : bracket(cfg, AlgebraElement(Sym::skew(m)), kn);
  AlgebraElement rhs = Q(det2(m, n)) * k_class_element(k_m(m + n));
  if (!(lhs == rhs)) throw CheckFailure("[d_m, k_n] differs from det(m;n) k_{m+n}");
  return lhs.k_part();
}

/// Generators of the affine sl_2 copy attached to (alpha, m, n), for k in [kmin, kmax].
struct Sl2Hat {
  Root alpha;
  Exp2 m;
  int n = 0;
  Exp2 shift;  // n m'
  std::vector<int> ks;
  std::vector<AlgebraElement> e, f, h;  // indexed like ks
  AlgebraElement center;
  AlgebraElement degree;
  Q central_scale;  // [h_j, h_-j] = central_scale * j * center
};

inline Sl2Hat sl2_hat(const AlgebraConfig& cfg, const Root& alpha, Exp2 m, int n, int kmin, int kmax) {
  const SimpleAlgebra& g = cfg.g();
  if (m.is_zero()) throw SemanticError("sl2_hat requires m != 0");
  if (root_height(alpha) <= 0 || g.root_vector(alpha) < 0) throw SemanticError("alpha must be a positive root");
  Sl2Hat out;
  out.alpha = alpha;
  out.m = m;
  out.n = n;
  Q mp0, mp1, md0, md1;
  if (m.m1 != 0) {
    if (n % m.m1 != 0) throw SemanticError("n m' is not integral (m1 must divide n)");
    out.shift = {n / m.m1, 0};
    mp0 = Q(1, 1) / m.m1;
    md1 = Q(1, 1) / m.m1;
  } else {
    if (n % m.m0 != 0) throw SemanticError("n m' is not integral (m0 must divide n)");
    out.shift = {0, -n / m.m0};
    mp1 = Q(-1) / m.m0;
    md0 = Q(1, 1) / m.m0;
  }
  Root neg = alpha;
  for (auto& c : neg) c = -c;
  const int xp = g.root_vector(alpha), xm = g.root_vector(neg);
  const auto hc = coroot(g, alpha);
  const Q scale = Q(2 * n) / root_length_sq(g, alpha);
  for (int k = kmin; k <= kmax; ++k) {
    out.ks.push_back(k);
    out.e.emplace_back(Sym::loop(k * m + out.shift, xp));
    out.f.emplace_back(Sym::loop(k * m - out.shift, xm));
    AlgebraElement hk;
    for (int a = 0; a < g.dim(); ++a) hk.add(Sym::loop(k * m, a), hc[a]);
    hk += scale * k_class_element(k_m(m, k));
    out.h.push_back(hk);
  }
  out.center.add(Sym::k(0), Q(m.m0));
  out.center.add(Sym::k(1), Q(m.m1));
  out.degree.add(Sym::d(0), md0);
  out.degree.add(Sym::d(1), md1);
  out.central_scale = Q(4) / root_length_sq(g, alpha);
  return out;
}

/// Verifies the affine A_1^(1) relations on the generators; returns human-readable violations.
inline std::vector<std::string> check_sl2_hat(const AlgebraConfig& cfg, const Sl2Hat& s) {
  std::vector<std::string> bad;
  const Q ef_scale = s.central_scale / 2;  // <x+, x-> = 2 / <alpha, alpha>
  const auto at = [&](int k) -> int {
    for (std::size_t i = 0; i < s.ks.size(); ++i)
      if (s.ks[i] == k) return static_cast<int>(i);
    return -1;
  };
  auto expect = [&](const AlgebraElement& got, const AlgebraElement& want, const std::string& what) {
    if (!(got == want)) bad.push_back(what);
  };
  for (std::size_t i = 0; i < s.ks.size(); ++i)
    for (std::size_t j = 0; j < s.ks.size(); ++j) {
      const int a = s.ks[i], b = s.ks[j];
      const int ab = at(a + b);
      const std::string tag = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
      if (ab < 0) continue;
      AlgebraElement cterm = a + b == 0 ? Q(a) * s.center : AlgebraElement{};
      expect(bracket(cfg, s.e[i], s.f[j]), s.h[ab] + ef_scale * cterm, "[E,F]" + tag);
      expect(bracket(cfg, s.h[i], s.e[j]), Q(2) * s.e[ab], "[H,E]" + tag);
      expect(bracket(cfg, s.h[i], s.f[j]), Q(-2) * s.f[ab], "[H,F]" + tag);
      expect(bracket(cfg, s.h[i], s.h[j]), s.central_scale * cterm, "[H,H]" + tag);
      expect(bracket(cfg, s.e[i], s.e[j]), {}, "[E,E]" + tag);
      expect(bracket(cfg, s.f[i], s.f[j]), {}, "[F,F]" + tag);
    }
  for (std::size_t i = 0; i < s.ks.size(); ++i) {
    const Q k(s.ks[i]);
    const std::string tag = "(" + std::to_string(s.ks[i]) + ")";
    expect(bracket(cfg, s.degree, s.e[i]), k * s.e[i], "[d,E]" + tag);
    expect(bracket(cfg, s.degree, s.f[i]), k * s.f[i], "[d,F]" + tag);
    expect(bracket(cfg, s.degree, s.h[i]), k * s.h[i], "[d,H]" + tag);
    expect(bracket(cfg, s.center, s.e[i]), {}, "[c,E]" + tag);
    expect(bracket(cfg, s.center, s.f[i]), {}, "[c,F]" + tag);
    expect(bracket(cfg, s.center, s.h[i]), {}, "[c,H]" + tag);
  }
  expect(bracket(cfg, s.center, s.degree), {}, "[c,d]");
  return bad;
}

/// 2x2 integer matrix, row-major.
struct Mat2 {
  long a00 = 1, a01 = 0, a10 = 0, a11 = 1;

  long det() const { return a00 * a11 - a01 * a10; }
  long at(int i, int j) const { return i == 0 ? (j == 0 ? a00 : a01) : (j == 0 ? a10 : a11); }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a00 * y.a00 + x.a01 * y.a10, x.a00 * y.a01 + x.a01 * y.a11,
            x.a10 * y.a00 + x.a11 * y.a10, x.a10 * y.a01 + x.a11 * y.a11};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;

  /// Inverse; requires det = +-1.
  Mat2 inverse() const {
    long d = det();
    if (d != 1 && d != -1) throw SemanticError("matrix is not unimodular");
    return {a11 * d, -a01 * d, -a10 * d, a00 * d};
  }
  /// m A^t as a row vector, i.e. the column vector A m.
  Exp2 act(Exp2 m) const {
    return {static_cast<int>(a00 * m.m0 + a01 * m.m1), static_cast<int>(a10 * m.m0 + a11 * m.m1)};
  }
};

/// Coordinate-change automorphism attached to A in GL_2(Z).
inline AlgebraElement chi_A(const AlgebraConfig& cfg, const Mat2& A, const AlgebraElement& x) {
  const Mat2 B = A.inverse();
  const long detB = B.det();
  AlgebraElement out;
  for (const auto& [s, c] : x.terms()) {
    detail::check_sym(cfg, s);
    switch (s.kind) {
      case Kind::Loop:
        out.add(Sym::loop(A.act(s.m), s.idx), c);
        break;
      case Kind::K:
        for (int i = 0; i < 2; ++i)
          if (A.at(i, s.idx) != 0) out.add(Sym::k(i, A.act(s.m)), c * A.at(i, s.idx));
        break;
      case Kind::D:
        for (int i = 0; i < 2; ++i)
          if (B.at(s.idx, i) != 0) out.add(Sym::d(i), c * B.at(s.idx, i));
        break;
      case Kind::Skew:
        out.add(Sym::skew(A.act(s.m)), c * detB);
        break;
    }
  }
  return out;
}

/// Central charge (c0, c1) of the twisted module: the row vector (c0, c1) A.
inline std::array<Q, 2> central_charge_transform(const std::array<Q, 2>& c, const Mat2& A) {
  if (A.det() != 1 && A.det() != -1) throw SemanticError("matrix is not unimodular");
  return {c[0] * A.a00 + c[1] * A.a10, c[0] * A.a01 + c[1] * A.a11};
}

/// Element of the Virasoro-like quotient S~ = g / g_c.
struct SElement {
  std::array<Q, 2> d{};
  std::map<Exp2, Q> dm;  // coefficients of d(m), m != 0

  void add_dm(Exp2 m, const Q& c) {
    if (sgn(c) == 0) return;
    Q& v = dm[m];
    v += c;
    if (sgn(v) == 0) dm.erase(m);
  }
  bool is_zero() const { return sgn(d[0]) == 0 && sgn(d[1]) == 0 && dm.empty(); }
  friend bool operator==(const SElement&, const SElement&) = default;
};

inline SElement pi_S(const AlgebraConfig& cfg, const AlgebraElement& x) {
  SElement out;
  for (const auto& [s, c] : x.terms()) {
    detail::check_sym(cfg, s);
    if (s.kind == Kind::D) out.d[s.idx] += c;
    if (s.kind == Kind::Skew) out.add_dm(s.m, c);
  }
  return out;
}

/// [d(m), d(n)] = det(m; n) d(m+n), [d_i, d(m)] = m_i d(m), [d_0, d_1] = 0.
inline SElement s_bracket(const SElement& x, const SElement& y) {
  SElement out;
  for (int i = 0; i < 2; ++i) {
    for (const auto& [m, c] : y.dm) out.add_dm(m, x.d[i] * c * m[i]);
    for (const auto& [m, c] : x.dm) out.add_dm(m, -y.d[i] * c * m[i]);
  }
  for (const auto& [m, a] : x.dm)
    for (const auto& [n, b] : y.dm) {
      long det = det2(m, n);
      if (det != 0) out.add_dm(m + n, a * b * det);
    }
  return out;
}

/// Element of G = (R (x) h) x| S~: loop-Cartan part h(m) keyed by (m, Cartan basis index).
struct GElement {
  std::map<std::pair<Exp2, int>, Q> h;
  SElement s;

  void add_h(Exp2 m, int a, const Q& c) {
    if (sgn(c) == 0) return;
    Q& v = h[{m, a}];
    v += c;
    if (sgn(v) == 0) h.erase({m, a});
  }
  friend bool operator==(const GElement&, const GElement&) = default;
};

inline GElement g_algebra_bracket(const GElement& x, const GElement& y) {
  GElement out;
  out.s = s_bracket(x.s, y.s);
  auto act = [&](const SElement& s, const std::map<std::pair<Exp2, int>, Q>& hs, int sign) {
    for (const auto& [key, c] : hs) {
      const auto& [n, a] = key;
      for (int i = 0; i < 2; ++i) out.add_h(n, a, sign * s.d[i] * c * n[i]);
      for (const auto& [m, dc] : s.dm) {
        long det = det2(m, n);
        if (det != 0) out.add_h(m + n, a, sign * dc * c * det);
      }
    }
  };
  act(x.s, y.h, 1);
  act(y.s, x.h, -1);
  return out;
}

/// All basis symbols whose exponents lie in [-box, box]^2 (K in normal form).
inline std::vector<Sym> basis_in_box(const AlgebraConfig& cfg, int box) {
  std::vector<Sym> out;
  for (int a = 0; a < cfg.g().dim(); ++a)
    for (int m0 = -box; m0 <= box; ++m0)
      for (int m1 = -box; m1 <= box; ++m1) out.push_back(Sym::loop({m0, m1}, a));
  for (int m0 = -box; m0 <= box; ++m0)
    for (int m1 = -box; m1 <= box; ++m1) {
      Exp2 m{m0, m1};
      if (m.is_zero()) {
        out.push_back(Sym::k(0));
        out.push_back(Sym::k(1));
      } else {
        out.push_back(Sym::k(m1 != 0 ? 0 : 1, m));
      }
    }
  out.push_back(Sym::d(0));
  out.push_back(Sym::d(1));
  for (int m0 = -box; m0 <= box; ++m0)
    for (int m1 = -box; m1 <= box; ++m1)
      if (m0 != 0 || m1 != 0) out.push_back(Sym::skew({m0, m1}));
  std::sort(out.begin(), out.end());
  return out;
}

/// Readable form of a basis symbol: t^(m0,m1)(x)name, t^(m0,m1)k_j, d_j, d_(m0,m1).
inline std::string describe(const AlgebraConfig& cfg, const Sym& s) {
  const std::string m = "(" + std::to_string(s.m.m0) + "," + std::to_string(s.m.m1) + ")";
  switch (s.kind) {
    case Kind::Loop:
      return "t^" + m + "(x)" + cfg.g().names[s.idx];
    case Kind::K:
      return (s.m.is_zero() ? std::string() : "t^" + m) + "k" + std::to_string(s.idx);
    case Kind::D:
      return "d" + std::to_string(s.idx);
    case Kind::Skew:
      return "d_" + m;
  }
  return "";
}

inline std::string describe(const AlgebraConfig& cfg, const AlgebraElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [s, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += (c == 1 ? std::string() : "(" + to_string(c) + ")") + describe(cfg, s);
  }
  return out;
}

namespace fixtures {

/// Copy of cfg whose base algebra has [x_a, x_b] perturbed by delta x_c (and [x_b, x_a] by
/// -delta x_c). Used to confirm that the sweeps detect a broken structure constant.
inline AlgebraConfig corrupt_structure(const AlgebraConfig& cfg, int a, int b, int c, const Q& delta) {
  const int dim = cfg.g().dim();
  if (a < 0 || b < 0 || c < 0 || a >= dim || b >= dim || c >= dim || a == b)
    throw SemanticError("corruption indices out of range");
  auto g = std::make_shared<SimpleAlgebra>(cfg.g());
  g->structure[a][b].emplace_back(c, delta);
  g->structure[b][a].emplace_back(c, -delta);
  return {g, cfg.mu};
}

}  // namespace fixtures

}  // namespace tek
