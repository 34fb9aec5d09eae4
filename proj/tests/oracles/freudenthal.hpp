#pragma once

// Freudenthal's recursion for weight multiplicities of sl_{l+1}, in Dynkin labels.
// (mu, nu) uses the inverse Cartan matrix of type A: (w_i, w_j) = min(i,j)(n - max(i,j))/n.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <vector>

namespace oracle {

using Weight = std::vector<int>;

inline mpq_class pairing(const Weight& a, const Weight& b) {
  const int l = static_cast<int>(a.size()), n = l + 1;
  mpq_class s;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      const int lo = std::min(i, j) + 1, hi = std::max(i, j) + 1;
      s += a[i] * b[j] * lo * (n - hi);
    }
  return s / n;
}

/// Positive roots alpha_i + ... + alpha_{j-1} as Dynkin labels.
inline std::vector<Weight> positive_roots(int l) {
  std::vector<Weight> out;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j <= l; ++j) {
      Weight r(l, 0);
      for (int k = i; k < j; ++k) {
        r[k] += 2;
        if (k > 0) r[k - 1] -= 1;
        if (k + 1 < l) r[k + 1] -= 1;
      }
      out.push_back(r);
    }
  return out;
}

/// Multiplicities of V(lambda) by descending depth below lambda.
inline std::map<Weight, int> freudenthal(const Weight& lambda) {
  const int l = static_cast<int>(lambda.size());
  const auto roots = positive_roots(l);
  Weight rho(l, 1);
  auto plus = [](Weight a, const Weight& b, int k) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
    return a;
  };
  auto norm_shift = [&](const Weight& w) {
    const Weight s = plus(w, rho, 1);
    return pairing(s, s);
  };
  const mpq_class top = norm_shift(lambda);
  std::map<Weight, int> mult{{lambda, 1}};
  // Candidate weights lambda - sum c_i alpha_i, layered by depth sum c_i.
  std::vector<Weight> simple;
  for (int i = 0; i < l; ++i) {
    Weight a(l, 0);
    a[i] = 2;
    if (i > 0) a[i - 1] = -1;
    if (i + 1 < l) a[i + 1] = -1;
    simple.push_back(a);
  }
  std::vector<Weight> layer{lambda};
  for (int depth = 1; !layer.empty(); ++depth) {
    std::map<Weight, int> next;
    for (const auto& w : layer)
      for (const auto& a : simple) next.emplace(plus(w, a, -1), 0);
    std::vector<Weight> kept;
    for (const auto& [mu, unused] : next) {
      const mpq_class den = top - norm_shift(mu);
      if (sgn(den) <= 0) continue;
      mpq_class sum;
      for (const auto& a : roots)
        for (int k = 1; k <= depth; ++k) {
          auto it = mult.find(plus(mu, a, k));
          if (it != mult.end()) sum += it->second * pairing(it->first, a);
        }
      const mpq_class m = 2 * sum / den;
      if (sgn(m) > 0) {
        mult[mu] = static_cast<int>(m.get_num().get_si());
        kept.push_back(mu);
      }
    }
    layer = kept;
  }
  return mult;
}

}  // namespace oracle
