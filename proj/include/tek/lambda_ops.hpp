#pragma once

// Coefficients of exp(-sum_k X_k z^k / k) for commuting operator families, the split
// X_k = A_k + c K_k into s-strata, and the Vandermonde solve that recovers the strata.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tek/error.hpp"
#include "tek/linalg.hpp"
#include "tek/modules.hpp"
#include "tek/rational.hpp"
#include "tek/toroidal.hpp"

namespace tek {

inline constexpr int kMaxSeriesDegree = 12;

using Operator = std::function<ModuleVector(const ModuleVector&)>;

/// A partition of b as part counts, with its coefficient prod_k (-1/k)^{c_k} / c_k!.
struct Partition {
  std::vector<std::pair<int, int>> counts;  // (part k, multiplicity c_k)
  int parts = 0;
  Q coeff;
};

/// Partitions of b, enumerated once for every b <= kMaxSeriesDegree.
inline const std::vector<Partition>& partitions(int b) {
  static const std::vector<std::vector<Partition>> table = [] {
    std::vector<std::vector<Partition>> t(kMaxSeriesDegree + 1);
    std::vector<std::pair<int, int>> cur;
    std::function<void(int, int, int)> rec = [&](int rest, int largest, int total) {
      if (rest == 0) {
        Partition p;
        p.counts = cur;
        p.coeff = 1;
        for (const auto& [k, c] : cur) {
          p.parts += c;
          p.coeff *= pow_q(Q(-1) / k, c);
          for (int i = 2; i <= c; ++i) p.coeff /= i;
        }
        t[total].push_back(std::move(p));
        return;
      }
      for (int k = std::min(rest, largest); k >= 1; --k)
        for (int c = rest / k; c >= 1; --c) {
          cur.emplace_back(k, c);
          rec(rest - k * c, k - 1, total);
          cur.pop_back();
        }
    };
    for (int b = 0; b <= kMaxSeriesDegree; ++b) rec(b, b, b);
    return t;
  }();
  if (b < 0 || b > kMaxSeriesDegree) throw SemanticError("series degree outside [0, 12]");
  return table[b];
}

/// Operators X_k, k >= 1, assumed to commute; the assumption is probed on demand and cached.
class CommutingFamily {
 public:
  using Member = std::function<ModuleVector(int, const ModuleVector&)>;

  explicit CommutingFamily(Member member) : member_(std::move(member)) {}

  ModuleVector apply(int k, const ModuleVector& v) const {
    if (k < 1) throw SemanticError("family members are indexed by k >= 1");
    return member_(k, v);
  }

  /// X_k X_l v = X_l X_k v for 1 <= k < l <= kmax on every probe vector. First result is cached.
  bool commutes(const std::vector<ModuleVector>& probe, int kmax) const {
    std::lock_guard<std::mutex> lock(*mutex_);
    if (!checked_) {
      bool ok = true;
      for (const auto& v : probe)
        for (int k = 1; k <= kmax && ok; ++k)
          for (int l = k + 1; l <= kmax && ok; ++l) ok = apply(k, apply(l, v)) == apply(l, apply(k, v));
      checked_ = ok;
    }
    return *checked_;
  }

 private:
  Member member_;
  mutable std::shared_ptr<std::mutex> mutex_ = std::make_shared<std::mutex>();
  mutable std::optional<bool> checked_;
};

/// Lambda_b = sum over partitions of b of prod (-X_k/k)^{c_k} / c_k!, Lambda_0 = Id.
class OperatorSeries {
 public:
  OperatorSeries(std::shared_ptr<const CommutingFamily> family, int truncation)
      : family_(std::move(family)), truncation_(truncation) {
    if (truncation < 0 || truncation > kMaxSeriesDegree) throw SemanticError("truncation must lie in [0, 12]");
  }

  int truncation() const { return truncation_; }

  ModuleVector apply(int b, const ModuleVector& v) const {
    if (b < 0 || b > truncation_) throw SemanticError("series coefficient beyond truncation");
    ModuleVector out;
    for (const auto& p : partitions(b)) out += p.coeff * apply_monomial(p, v);
    return out;
  }

  /// Only the partitions of b into exactly s parts.
  ModuleVector apply_stratum(int b, int s, const ModuleVector& v) const {
    if (b < 0 || b > truncation_) throw SemanticError("series coefficient beyond truncation");
    ModuleVector out;
    for (const auto& p : partitions(b))
      if (p.parts == s) out += p.coeff * apply_monomial(p, v);
    return out;
  }

  Operator coefficient(int b) const {
    return [self = *this, b](const ModuleVector& v) { return self.apply(b, v); };
  }

 private:
  ModuleVector apply_monomial(const Partition& p, ModuleVector v) const {
    for (const auto& [k, c] : p.counts)
      for (int i = 0; i < c && !v.is_zero(); ++i) v = family_->apply(k, v);
    return v;
  }

  std::shared_ptr<const CommutingFamily> family_;
  int truncation_;
};

inline OperatorSeries exp_series(std::shared_ptr<const CommutingFamily> family, int truncation,
                                 const std::vector<ModuleVector>& probe = {}) {
  if (!probe.empty() && !family->commutes(probe, truncation))
    throw CheckFailure("operator family does not commute on the probe set");
  return OperatorSeries(std::move(family), truncation);
}

/// t^{km} (x) alpha^vee as an algebra element.
inline AlgebraElement loop_coroot(const AlgebraConfig& cfg, const Root& alpha, Exp2 p) {
  AlgebraElement out;
  const auto hc = coroot(cfg.g(), alpha);
  for (int a = 0; a < cfg.g().dim(); ++a) out.add(Sym::loop(p, a), hc[a]);
  return out;
}

/// Two commuting families A_k and K_k with X_k = A_k + c K_k.
struct SplitFamily {
  CommutingFamily::Member a, k;
};

/// A_k = t^{km} (x) alpha^vee and K_k = k_{m,k} acting on a module.
inline SplitFamily module_split_family(const Module& mod, const Root& alpha, Exp2 m) {
  if (m.is_zero()) throw SemanticError("m must be nonzero");
  const AlgebraConfig& cfg = mod.config();
  return {[&mod, alpha, m, &cfg](int k, const ModuleVector& v) { return mod.act(loop_coroot(cfg, alpha, k * m), v); },
          [&mod, m](int k, const ModuleVector& v) { return mod.act(k_class_element(k_m(m, k)), v); }};
}

inline std::shared_ptr<const CommutingFamily> combined_family(const SplitFamily& f, const Q& c) {
  return std::make_shared<const CommutingFamily>([f, c](int k, const ModuleVector& v) {
    ModuleVector out = f.a(k, v);
    if (sgn(c) != 0) out += c * f.k(k, v);
    return out;
  });
}

/// Lambda^{alpha,m,n}: the series of X_k = t^{km} (x) alpha^vee + (2n/<alpha,alpha>) k_{m,k}.
inline OperatorSeries lambda_alpha_m_n(const Module& mod, const Root& alpha, Exp2 m, int n, int truncation) {
  const Q c = Q(2 * n) / root_length_sq(mod.config().g(), alpha);
  return exp_series(combined_family(module_split_family(mod, alpha, m), c), truncation);
}

/// The s-strata Lambda_b(s) = sum_{b1 + b2 = b} Lambda_{1,b1} Lambda_{2,b2}(s).
class LambdaStrata {
 public:
  LambdaStrata(SplitFamily f, int truncation)
      : family_(std::move(f)),
        lambda1_(std::make_shared<const CommutingFamily>(family_.a), truncation),
        lambda2_(std::make_shared<const CommutingFamily>(family_.k), truncation),
        truncation_(truncation) {}

  int truncation() const { return truncation_; }

  ModuleVector lambda1(int b, const ModuleVector& v) const { return lambda1_.apply(b, v); }
  ModuleVector lambda2(int b, int s, const ModuleVector& v) const { return lambda2_.apply_stratum(b, s, v); }

  ModuleVector stratum(int b, int s, const ModuleVector& v) const {
    ModuleVector out;
    for (int b2 = s; b2 <= b; ++b2) {
      ModuleVector w = lambda2(b2, s, v);
      if (!w.is_zero()) out += lambda1(b - b2, w);
    }
    return out;
  }

  /// Series coefficient for the parameter c = 2n/<alpha,alpha>, computed directly.
  ModuleVector combined(int b, const Q& c, const ModuleVector& v) const {
    return OperatorSeries(combined_family(family_, c), truncation_).apply(b, v);
  }

  /// sum_s c^s Lambda_b(s) v
  ModuleVector recombined(int b, const Q& c, const ModuleVector& v) const {
    ModuleVector out;
    for (int s = 0; s <= b; ++s) out += pow_q(c, s) * stratum(b, s, v);
    return out;
  }

  /// ((-1)^b / b!) K_1^b v
  ModuleVector top_expected(int b, const ModuleVector& v) const {
    ModuleVector w = v;
    Q coef = b % 2 ? Q(-1) : Q(1);
    for (int i = 1; i <= b; ++i) {
      w = family_.k(1, w);
      coef /= i;
    }
    return coef * w;
  }

 private:
  SplitFamily family_;
  OperatorSeries lambda1_, lambda2_;
  int truncation_;
};

inline LambdaStrata lambda_s_decomposition(const Module& mod, const Root& alpha, Exp2 m, int truncation) {
  return LambdaStrata(module_split_family(mod, alpha, m), truncation);
}

/// Inverse of the (b+1)x(b+1) matrix [(ratio n)^s], rows n = 0..b, columns s; 0^0 = 1.
inline Matrix vandermonde_inverse(int b, const Q& ratio) {
  if (b < 0) throw SemanticError("b must be non-negative");
  if (sgn(ratio) == 0 && b > 0) throw SemanticError("singular Vandermonde system");
  const std::size_t n = static_cast<std::size_t>(b) + 1;
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) aug(r, s) = pow_q(ratio * static_cast<long>(r), static_cast<long>(s));
    aug(r, n + r) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw SemanticError("singular Vandermonde system");
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

/// Unknowns X_s with values[n] = sum_s (ratio n)^s X_s for n = 0..b.
inline std::vector<Q> vandermonde_extract(const std::vector<Q>& values, const Q& ratio) {
  if (values.empty()) throw SemanticError("need at least one value");
  const Matrix inv = vandermonde_inverse(static_cast<int>(values.size()) - 1, ratio);
  return inv.apply(values);
}

inline std::vector<ModuleVector> vandermonde_extract(const std::vector<ModuleVector>& values, const Q& ratio) {
  if (values.empty()) throw SemanticError("need at least one value");
  const Matrix inv = vandermonde_inverse(static_cast<int>(values.size()) - 1, ratio);
  std::vector<ModuleVector> out(values.size());
  for (std::size_t s = 0; s < values.size(); ++s)
    for (std::size_t n = 0; n < values.size(); ++n) out[s] += inv(s, n) * values[n];
  return out;
}

struct Lemma41Report {
  bool precondition = false;
  std::string precondition_failure;
  int n_bar = 0;
  std::map<int, bool> vanish_plus, vanish_minus;  // b -> Lambda_{+-b} v == 0
  bool product = false;                           // Lambda_{n} Lambda_{-n} v == v
  bool passed() const {
    if (!precondition || !product) return false;
    for (const auto& [b, ok] : vanish_plus)
      if (!ok) return false;
    for (const auto& [b, ok] : vanish_minus)
      if (!ok) return false;
    return true;
  }
};

/// Commutation probe for v highest for the copy of sl_2 attached to (alpha, m): the series in both
/// directions vanish above n_bar = alpha^vee-eigenvalue, and Lambda_{n_bar} Lambda_{-n_bar} v = v.
inline Lemma41Report check_lemma_4_1(const Module& mod, const Root& alpha, Exp2 m, const ModuleVector& v, int cap,
                                     int window = 3) {
  Lemma41Report rep;
  const AlgebraConfig& cfg = mod.config();
  const int xp = cfg.g().root_vector(alpha);
  if (xp < 0 || root_height(alpha) <= 0) throw SemanticError("alpha must be a positive root");
  ModuleVector hv = mod.act(loop_coroot(cfg, alpha, {}), v);
  const auto& [k0, c0] = *v.terms().begin();
  const Q eig = hv.coeff(k0) / c0;
  if (!(hv == eig * v) || !is_integer(eig) || sgn(eig) < 0) {
    rep.precondition_failure = "v is not an alpha^vee-eigenvector with eigenvalue in N";
    return rep;
  }
  for (int k = -window; k <= window; ++k)
    if (!mod.act(AlgebraElement(Sym::loop(k * m, xp)), v).is_zero()) {
      rep.precondition_failure = "t^{km} (x) x_alpha^+ does not annihilate v";
      return rep;
    }
  rep.precondition = true;
  rep.n_bar = static_cast<int>(eig.get_num().get_si());
  if (rep.n_bar > kMaxSeriesDegree || cap > kMaxSeriesDegree) throw SemanticError("series degree outside [0, 12]");
  auto family = [&](int dir) {
    return std::make_shared<const CommutingFamily>(
        [&mod, &cfg, alpha, m, dir](int k, const ModuleVector& w) { return mod.act(loop_coroot(cfg, alpha, (dir * k) * m), w); });
  };
  const OperatorSeries plus(family(1), cap), minus(family(-1), cap);
  for (int b = rep.n_bar + 1; b <= cap; ++b) {
    rep.vanish_plus[b] = plus.apply(b, v).is_zero();
    rep.vanish_minus[b] = minus.apply(b, v).is_zero();
  }
  if (rep.n_bar <= cap) rep.product = plus.apply(rep.n_bar, minus.apply(rep.n_bar, v)) == v;
  return rep;
}

namespace fixtures {

/// Diagonal stand-in where t^{km} (x) alpha^vee and k_{m,k} act on basis vector u by prescribed
/// scalars. It is not a module for the algebra; it only gives the s >= 1 strata a faithful
/// commutative action.
struct SyntheticKScalar {
  int dim = 1;
  std::function<Q(int k, int u)> loop_scalar;
  std::function<Q(int k, int u)> k_scalar;

  SplitFamily family() const {
    auto diag = [](std::function<Q(int, int)> f) {
      return [f](int k, const ModuleVector& v) {
        ModuleVector out;
        for (const auto& [key, c] : v.terms()) out.add(key, c * f(k, key.u));
        return out;
      };
    };
    return {diag(loop_scalar), diag(k_scalar)};
  }

  std::vector<ModuleVector> basis() const {
    std::vector<ModuleVector> out;
    for (int u = 0; u < dim; ++u) out.emplace_back(BasisKey{{}, u, 0, 0});
    return out;
  }
};

/// Default synthetic data: nonzero, non-constant in both k and u.
inline SyntheticKScalar default_synthetic(int dim = 3) {
  return {dim, [](int k, int u) -> Q { return Q(k + 2 * u + 1) / (u + 2); },
          [](int k, int u) -> Q { return Q(3 - 2 * k + u) / (k + 1); }};
}

}  // namespace fixtures

}  // namespace tek
