#pragma once

// Exp-polynomial sequences f(n) = sum_i c_i n^{m_i} b_i^n over Q.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tek/error.hpp"
#include "tek/linalg.hpp"
#include "tek/rational.hpp"
#include "tek/simple_lie.hpp"

namespace tek {

struct ExpTerm {
  Q c;
  int m = 0;
  Q b;

  friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// Canonical form: sorted by (b, m), (b, m) pairs unique, no zero coefficient.
class ExpPolynomial {
 public:
  ExpPolynomial() = default;
  explicit ExpPolynomial(const std::vector<ExpTerm>& terms) {
    for (const auto& t : terms) add(t.c, t.m, t.b);
  }

  void add(const Q& c, int m, const Q& b) {
    if (m < 0) throw SemanticError("exp-polynomial exponent m must be non-negative");
    if (sgn(b) == 0) throw SemanticError("exp-polynomial base b must be nonzero");
    if (sgn(c) == 0) return;
    auto it = terms_.find({b, m});
    if (it == terms_.end()) {
      terms_.emplace(std::make_pair(b, m), c);
    } else {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  std::vector<ExpTerm> terms() const {
    std::vector<ExpTerm> out;
    for (const auto& [key, c] : terms_) out.push_back({c, key.second, key.first});
    return out;
  }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// 0^0 = 1, so f(0) is the sum of the m = 0 coefficients.
  Q operator()(long n) const {
    Q out;
    for (const auto& [key, c] : terms_) out += c * pow_q(Q(n), key.second) * pow_q(key.first, n);
    return out;
  }

  /// Distinct bases with the largest exponent attached to each.
  std::map<Q, int> root_orders() const {
    std::map<Q, int> out;
    for (const auto& [key, c] : terms_) {
      auto [it, inserted] = out.try_emplace(key.first, key.second);
      if (!inserted) it->second = std::max(it->second, key.second);
    }
    return out;
  }

  ExpPolynomial& operator+=(const ExpPolynomial& o) {
    for (const auto& [key, c] : o.terms_) add(c, key.second, key.first);
    return *this;
  }
  friend ExpPolynomial operator+(ExpPolynomial a, const ExpPolynomial& b) { return a += b; }
  friend ExpPolynomial operator-(ExpPolynomial a, const ExpPolynomial& b) { return a += Q(-1) * b; }
  friend ExpPolynomial operator*(const Q& s, const ExpPolynomial& f) {
    ExpPolynomial out;
    for (const auto& [key, c] : f.terms_) out.add(s * c, key.second, key.first);
    return out;
  }
  /// n^k f(n)
  ExpPolynomial times_power(int k) const {
    ExpPolynomial out;
    for (const auto& [key, c] : terms_) out.add(c, key.second + k, key.first);
    return out;
  }
  friend bool operator==(const ExpPolynomial&, const ExpPolynomial&) = default;

 private:
  std::map<std::pair<Q, int>, Q> terms_;
};

inline Q eval(const ExpPolynomial& f, long n) { return f(n); }

/// Coefficients p_0..p_N (increasing degree) of prod_b (x - b)^{max m_b + 1}.
inline std::vector<Q> char_recurrence(const ExpPolynomial& f) {
  std::vector<Q> p{Q(1)};
  for (const auto& [b, m] : f.root_orders())
    for (int r = 0; r <= m; ++r) {
      std::vector<Q> next(p.size() + 1);
      for (std::size_t i = 0; i < p.size(); ++i) {
        next[i + 1] += p[i];
        next[i] -= b * p[i];
      }
      p = std::move(next);
    }
  return p;
}

/// sum_i p_i f(n + i) = 0 for every n in [lo, hi].
inline bool verify_recurrence(const ExpPolynomial& f, const std::vector<Q>& p, long lo, long hi) {
  for (long n = lo; n <= hi; ++n) {
    Q s;
    for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * f(n + static_cast<long>(i));
    if (sgn(s) != 0) return false;
  }
  return true;
}

/// Solves for the coefficients of n^j b^n (j < multiplicity) using every supplied value.
/// Throws SemanticError when the values do not determine a unique consistent solution.
inline ExpPolynomial fit_from_values(const std::map<long, Q>& values, const std::vector<std::pair<Q, int>>& roots) {
  std::vector<std::pair<Q, int>> basis;
  std::set<Q> seen;
  for (const auto& [b, mult] : roots) {
    if (sgn(b) == 0) throw SemanticError("fit_from_values: root must be nonzero");
    if (mult < 1) throw SemanticError("fit_from_values: multiplicity must be positive");
    if (!seen.insert(b).second) throw SemanticError("fit_from_values: repeated root");
    for (int j = 0; j < mult; ++j) basis.emplace_back(b, j);
  }
  if (values.size() < basis.size()) throw SemanticError("fit_from_values: not enough values");
  Matrix a(values.size(), basis.size());
  std::vector<Q> rhs;
  std::size_t row = 0;
  for (const auto& [n, v] : values) {
    for (std::size_t k = 0; k < basis.size(); ++k)
      a(row, k) = pow_q(Q(n), basis[k].second) * pow_q(basis[k].first, n);
    rhs.push_back(v);
    ++row;
  }
  auto sol = solve_unique(a, rhs);
  if (!sol) throw SemanticError("fit_from_values: values are inconsistent with the given roots");
  ExpPolynomial f;
  for (std::size_t k = 0; k < basis.size(); ++k) f.add((*sol)[k], basis[k].second, basis[k].first);
  return f;
}

/// Validates the data (lambda_i, a_i, phi): nonzero weights, distinct nonzero a_i, phi(0) = 0.
inline void check_triple_conditions(const std::vector<DominantWeight>& lambdas, const std::vector<Q>& as,
                                    const ExpPolynomial& phi) {
  if (lambdas.size() != as.size()) throw SemanticError("lambda and a lists differ in length");
  for (const auto& l : lambdas) {
    const bool finite_zero = std::all_of(l.coords.begin(), l.coords.end(), [](int c) { return c == 0; });
    if (finite_zero && sgn(l.k0_value) == 0 && sgn(l.d0_value) == 0) throw SemanticError("lambda_i must be nonzero");
    for (int c : l.coords)
      if (c < 0) throw SemanticError("lambda_i must be dominant");
    Q a0 = l.k0_value;
    for (int c : l.coords) a0 -= c;
    if (!is_integer(a0) || sgn(a0) < 0) throw SemanticError("lambda_i(alpha_0^vee) must be a non-negative integer");
  }
  std::set<Q> distinct;
  for (const auto& a : as) {
    if (sgn(a) == 0) throw SemanticError("a_i must be nonzero");
    if (!distinct.insert(a).second) throw SemanticError("a_i must be pairwise distinct");
  }
  if (sgn(phi(0)) != 0) throw SemanticError("phi(0) must vanish");
}

/// chi(m) = m^2 sum_i a_i^m (lambda_i(d0) + mu lambda_i(k0)) - phi(m).
inline ExpPolynomial chi_from_phi(const std::vector<DominantWeight>& lambdas, const std::vector<Q>& as, const Q& mu,
                                  const ExpPolynomial& phi) {
  check_triple_conditions(lambdas, as, phi);
  ExpPolynomial chi = Q(-1) * phi;
  for (std::size_t i = 0; i < as.size(); ++i) chi.add(lambdas[i].d0_value + mu * lambdas[i].k0_value, 2, as[i]);
  if (sgn(chi(0)) != 0) throw CheckFailure("chi(0) != 0");
  return chi;
}

/// phi(m) = -phi'(m) + mu m^2 sum_s lambda_s(k0) a_s^m.
inline ExpPolynomial phi_from_phi_prime(const ExpPolynomial& phi_prime, const std::vector<DominantWeight>& lambdas,
                                        const std::vector<Q>& as, const Q& mu) {
  if (lambdas.size() != as.size()) throw SemanticError("lambda and a lists differ in length");
  ExpPolynomial phi = Q(-1) * phi_prime;
  for (std::size_t i = 0; i < as.size(); ++i) phi.add(mu * lambdas[i].k0_value, 2, as[i]);
  return phi;
}

}  // namespace tek
