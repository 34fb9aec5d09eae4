#pragma once

// Type A simple Lie algebras sl_{l+1} in the matrix realization, and their
// irreducible finite-dimensional highest-weight modules.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "tek/error.hpp"
#include "tek/linalg.hpp"
#include "tek/rational.hpp"

namespace tek {

using Root = std::vector<int>;  // simple-root coordinates
using Term = std::pair<int, Q>;  // (basis index, coefficient)

/// sl_{l+1} with a Chevalley basis. Basis order: positive root vectors by
/// (height, start), then h_1..h_l, then the negative root vectors in the
/// same order as their positive partners. For sl_2 this is {e, h, f}.
struct SimpleAlgebra {
  int rank = 0;
  std::vector<Matrix> basis;
  std::vector<Root> roots;  // zero vector for Cartan elements
  std::vector<std::string> names;
  Matrix form;                                  // trace form on the natural module
  std::vector<std::vector<std::vector<Term>>> structure;  // [a][b] -> [x_a, x_b]
  std::vector<int> e, f, h;                     // Chevalley generators, 0-based simple index
  std::vector<int> positive;                    // x_alpha^+ for every positive root
  std::vector<int> negative;                    // matching x_alpha^-

  int dim() const { return static_cast<int>(basis.size()); }
  int matrix_size() const { return rank + 1; }
  bool is_cartan(int a) const {
    return std::all_of(roots[a].begin(), roots[a].end(), [](int c) { return c == 0; });
  }

  /// Basis index of the root vector for `alpha`, or -1.
  int root_vector(const Root& alpha) const {
    for (int a = 0; a < dim(); ++a)
      if (!is_cartan(a) && roots[a] == alpha) return a;
    return -1;
  }

  /// Coordinates of a traceless matrix in the basis.
  std::vector<Q> decompose(const Matrix& x) const {
    std::vector<Q> c(dim());
    const int n = matrix_size();
    for (int a = 0; a < dim(); ++a) {
      if (is_cartan(a)) continue;
      // root vectors are single matrix units
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (sgn(basis[a](i, j)) != 0) c[a] = x(i, j);
    }
    Q partial;
    for (int k = 0; k < rank; ++k) {
      partial += x(k, k);
      c[h[k]] = partial;
    }
    return c;
  }

  Q pairing(int a, int b) const { return form(a, b); }

  /// Value of a Cartan basis element h_k on a weight given by Dynkin labels.
  template <class Weight>
  Q cartan_value(int a, const Weight& dynkin) const {
    for (int k = 0; k < rank; ++k)
      if (h[k] == a) return Q(dynkin[k]);
    return Q(0);
  }
};

inline int root_height(const Root& r) { return std::accumulate(r.begin(), r.end(), 0); }

/// sl_{l+1} with Chevalley basis, root list, trace form and structure constants.
inline SimpleAlgebra build_type_a(int rank) {
  if (rank < 1) throw SemanticError("rank must be >= 1");
  SimpleAlgebra g;
  g.rank = rank;
  const int n = rank + 1;

  struct RootVec {
    int i, j;  // matrix unit E_ij with i < j
    Root root;
  };
  std::vector<RootVec> pos;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Root r(rank, 0);
      for (int k = i; k < j; ++k) r[k] = 1;
      pos.push_back({i, j, r});
    }
  std::stable_sort(pos.begin(), pos.end(), [](const RootVec& a, const RootVec& b) {
    int ha = a.j - a.i, hb = b.j - b.i;
    return ha != hb ? ha < hb : a.i < b.i;
  });

  auto unit = [n](int i, int j) {
    Matrix m(n, n);
    m(i, j) = 1;
    return m;
  };
  auto label = [](const char* p, int i, int j) {
    return std::string(p) + "_" + std::to_string(i + 1) + std::to_string(j + 1);
  };

  for (const auto& p : pos) {
    g.basis.push_back(unit(p.i, p.j));
    g.roots.push_back(p.root);
    g.names.push_back(rank == 1 ? "e" : label("E", p.i, p.j));
    g.positive.push_back(static_cast<int>(g.basis.size()) - 1);
  }
  g.h.resize(rank);
  for (int k = 0; k < rank; ++k) {
    Matrix m(n, n);
    m(k, k) = 1;
    m(k + 1, k + 1) = -1;
    g.basis.push_back(m);
    g.roots.push_back(Root(rank, 0));
    g.names.push_back(rank == 1 ? "h" : "h_" + std::to_string(k + 1));
    g.h[k] = static_cast<int>(g.basis.size()) - 1;
  }
  for (const auto& p : pos) {
    g.basis.push_back(unit(p.j, p.i));
    Root r = p.root;
    for (auto& c : r) c = -c;
    g.roots.push_back(r);
    g.names.push_back(rank == 1 ? "f" : label("E", p.j, p.i));
    g.negative.push_back(static_cast<int>(g.basis.size()) - 1);
  }
  g.e.resize(rank);
  g.f.resize(rank);
  for (int k = 0; k < rank; ++k) {
    Root r(rank, 0);
    r[k] = 1;
    g.e[k] = g.root_vector(r);
    for (auto& c : r) c = -c;
    g.f[k] = g.root_vector(r);
  }

  const int d = g.dim();
  g.form = Matrix(d, d);
  g.structure.assign(d, std::vector<std::vector<Term>>(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      g.form(a, b) = (g.basis[a] * g.basis[b]).trace();
      auto c = g.decompose(commutator(g.basis[a], g.basis[b]));
      for (int k = 0; k < d; ++k)
        if (sgn(c[k]) != 0) g.structure[a][b].emplace_back(k, c[k]);
    }
  return g;
}

/// Bracket of two coordinate vectors using the structure constants.
inline std::vector<Q> lie_bracket(const SimpleAlgebra& g, const std::vector<Q>& x,
                                  const std::vector<Q>& y) {
  std::vector<Q> out(g.dim());
  for (int a = 0; a < g.dim(); ++a) {
    if (sgn(x[a]) == 0) continue;
    for (int b = 0; b < g.dim(); ++b) {
      if (sgn(y[b]) == 0) continue;
      for (const auto& [c, s] : g.structure[a][b]) out[c] += x[a] * y[b] * s;
    }
  }
  return out;
}

/// Coroot h_alpha as coordinates in the basis. For type A this is E_ii - E_jj.
inline std::vector<Q> coroot(const SimpleAlgebra& g, const Root& alpha) {
  if (static_cast<int>(alpha.size()) != g.rank || g.root_vector(alpha) < 0)
    throw SemanticError("not a root");
  int a = g.root_vector(alpha);
  Root neg = alpha;
  for (auto& c : neg) c = -c;
  int b = g.root_vector(neg);
  // [E_ij, E_ji] = E_ii - E_jj
  return g.decompose(commutator(g.basis[a], g.basis[b]));
}

/// <alpha, alpha> in the normalized form; 2 for every root in type A.
inline Q root_length_sq(const SimpleAlgebra& g, const Root& alpha) {
  int a = g.root_vector(alpha);
  if (a < 0) throw SemanticError("not a root");
  // coroot h with alpha(h) = 2; <h, h> = 4 / <alpha, alpha>
  auto hc = coroot(g, alpha);
  Q hh;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      if (sgn(hc[i]) != 0 && sgn(hc[j]) != 0) hh += hc[i] * hc[j] * g.form(i, j);
  return Q(4) / hh;
}

/// Dominant integral weight of g (Dynkin labels), plus the affine extension data
/// (values on d_0 and k_0) used by affine weights.
struct DominantWeight {
  std::vector<int> coords;
  Q d0_value = 0;
  Q k0_value = 0;
};

inline DominantWeight weight_from_labels(std::vector<int> labels) {
  for (int c : labels)
    if (c < 0) throw SemanticError("weight is not dominant");
  return DominantWeight{std::move(labels), Q(0), Q(0)};
}

/// Irreducible finite-dimensional module with explicit action matrices.
struct FiniteModule {
  int dimension = 0;
  std::vector<std::vector<int>> weight_of_basis;  // Dynkin labels
  std::vector<Matrix> action;                     // indexed by algebra basis index
  int highest_index = 0;
};

/// <lambda + rho, alpha^vee> / <rho, alpha^vee> over the positive roots.
inline mpz_class weyl_dimension(const SimpleAlgebra& g, const DominantWeight& lambda) {
  if (static_cast<int>(lambda.coords.size()) != g.rank) throw SemanticError("weight rank mismatch");
  Q prod(1);
  for (int a : g.positive) {
    const Root& r = g.roots[a];
    long num = 0, den = 0;
    for (int k = 0; k < g.rank; ++k) {
      num += static_cast<long>(r[k]) * (lambda.coords[k] + 1);
      den += r[k];
    }
    prod *= Q(num) / den;
  }
  return prod.get_num();
}

inline FiniteModule sl2_module(int d) {
  if (d < 1) throw SemanticError("sl2 module dimension must be >= 1");
  FiniteModule m;
  m.dimension = d;
  Matrix e(d, d), h(d, d), f(d, d);
  for (int j = 0; j < d; ++j) {
    h(j, j) = d - 1 - 2 * j;
    if (j > 0) e(j - 1, j) = j * (d - j);
    if (j + 1 < d) f(j + 1, j) = 1;
    m.weight_of_basis.push_back({d - 1 - 2 * j});
  }
  m.action = {e, h, f};  // sl_2 basis order
  m.highest_index = 0;
  return m;
}

namespace detail {

// Sparse module used while building V(lambda): action[a] maps basis j to a list of (i, c).
struct SparseModule {
  int dim = 0;
  std::vector<std::vector<int>> weights;
  std::vector<std::vector<std::vector<std::pair<int, Q>>>> action;  // [a][j]
  int highest = 0;
};

inline SparseModule exterior_power(const SimpleAlgebra& g, int k) {
  const int n = g.matrix_size();
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      subsets.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(subsets.size()); ++i) index[subsets[i]] = i;

  SparseModule m;
  m.dim = static_cast<int>(subsets.size());
  for (const auto& s : subsets) {
    // weight of e_s: sum of the natural-module weights; h_j = E_jj - E_{j+1,j+1}
    std::vector<int> w(g.rank, 0);
    for (int i : s) {
      if (i < g.rank) ++w[i];
      if (i > 0) --w[i - 1];
    }
    m.weights.push_back(w);
  }
  m.action.assign(g.dim(), std::vector<std::vector<std::pair<int, Q>>>(m.dim));
  for (int a = 0; a < g.dim(); ++a)
    for (int j = 0; j < m.dim; ++j) {
      std::map<int, Q> acc;
      const auto& s = subsets[j];
      for (int t = 0; t < k; ++t)
        for (int r = 0; r < n; ++r) {
          const Q& c = g.basis[a](r, s[t]);
          if (sgn(c) == 0) continue;
          std::vector<int> img = s;
          img[t] = r;
          if (r != s[t] && std::find(s.begin(), s.end(), r) != s.end()) continue;
          // sort with sign
          int sign = 1;
          for (std::size_t x = 0; x < img.size(); ++x)
            for (std::size_t y = x + 1; y < img.size(); ++y)
              if (img[x] > img[y]) sign = -sign;
          std::sort(img.begin(), img.end());
          acc[index.at(img)] += sign * c;
        }
      for (auto& [i, c] : acc)
        if (sgn(c) != 0) m.action[a][j].emplace_back(i, c);
    }
  m.highest = 0;  // e_0 ^ ... ^ e_{k-1}
  return m;
}

using SparseVec = std::map<std::uint64_t, Q>;

struct TensorAmbient {
  std::vector<const SparseModule*> factors;
  std::vector<std::uint64_t> radix;

  std::vector<int> digits(std::uint64_t code) const {
    std::vector<int> d(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      d[i] = static_cast<int>(code % radix[i]);
      code /= radix[i];
    }
    return d;
  }
  std::uint64_t encode(const std::vector<int>& d) const {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) code = code * radix[i] + d[i];
    return code;
  }
  SparseVec act(int a, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [code, c] : v) {
      auto d = digits(code);
      for (std::size_t slot = 0; slot < factors.size(); ++slot) {
        int old = d[slot];
        for (const auto& [i, s] : factors[slot]->action[a][old]) {
          d[slot] = i;
          out[encode(d)] += c * s;
        }
        d[slot] = old;
      }
    }
    for (auto it = out.begin(); it != out.end();)
      it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
    return out;
  }
};

// Echelon basis of one weight space, keeping both the original vectors (the module basis)
// and a reduced copy for membership tests.
struct WeightSpace {
  std::vector<int> members;                   // global basis indices
  std::vector<SparseVec> reduced;             // echelon rows, coefficient 1 at pivot
  std::vector<std::uint64_t> pivots;
  std::vector<std::vector<Q>> reduced_coord;  // reduced row in terms of members

  // Reduces v against the echelon rows; returns remainder and coordinates used.
  std::pair<SparseVec, std::vector<Q>> reduce(SparseVec v) const {
    std::vector<Q> coord(members.size());
    for (std::size_t r = 0; r < reduced.size(); ++r) {
      auto it = v.find(pivots[r]);
      if (it == v.end()) continue;
      Q f = it->second;  // rows are normalized with pivot coefficient 1
      for (const auto& [k, c] : reduced[r]) {
        Q& t = v[k];
        t -= f * c;
        if (sgn(t) == 0) v.erase(k);
      }
      for (std::size_t j = 0; j < coord.size(); ++j) coord[j] += f * reduced_coord[r][j];
    }
    return {v, coord};
  }
};

}  // namespace detail

/// Irreducible module V(lambda), realized as the lowering closure of the highest-weight
/// vector inside a tensor product of exterior powers of the natural module.
inline FiniteModule irreducible_module(const SimpleAlgebra& g, const DominantWeight& lambda) {
  if (static_cast<int>(lambda.coords.size()) != g.rank) throw SemanticError("weight rank mismatch");
  for (int c : lambda.coords)
    if (c < 0) throw SemanticError("weight is not dominant");

  std::vector<detail::SparseModule> fundamentals;
  for (int k = 1; k <= g.rank; ++k) fundamentals.push_back(detail::exterior_power(g, k));
  detail::TensorAmbient amb;
  for (int k = 0; k < g.rank; ++k)
    for (int c = 0; c < lambda.coords[k]; ++c) {
      amb.factors.push_back(&fundamentals[k]);
      amb.radix.push_back(static_cast<std::uint64_t>(fundamentals[k].dim));
    }

  FiniteModule m;
  if (amb.factors.empty()) {
    m.dimension = 1;
    m.weight_of_basis = {std::vector<int>(g.rank, 0)};
    m.action.assign(g.dim(), Matrix(1, 1));
    return m;
  }

  std::vector<detail::SparseVec> vecs;
  std::vector<std::vector<int>> wts;
  std::map<std::vector<int>, detail::WeightSpace> spaces;

  auto try_add = [&](const detail::SparseVec& v, const std::vector<int>& w) {
    auto& ws = spaces[w];
    auto [rem, coord] = ws.reduce(v);
    if (rem.empty()) return false;
    int idx = static_cast<int>(vecs.size());
    vecs.push_back(v);
    wts.push_back(w);
    // new echelon row: rem = v - sum coord_j members_j
    Q lead = rem.begin()->second;
    for (auto& [k, c] : rem) c /= lead;
    std::vector<Q> rc(ws.members.size() + 1);
    for (std::size_t j = 0; j < coord.size(); ++j) rc[j] = -coord[j] / lead;
    rc.back() = Q(1) / lead;
    for (auto& row : ws.reduced_coord) row.emplace_back(0);
    // keep earlier rows reduced at the new pivot
    auto pivot = rem.begin()->first;
    for (std::size_t r = 0; r < ws.reduced.size(); ++r) {
      auto it = ws.reduced[r].find(pivot);
      if (it == ws.reduced[r].end()) continue;
      Q f = it->second;
      for (const auto& [k, c] : rem) {
        Q& t = ws.reduced[r][k];
        t -= f * c;
        if (sgn(t) == 0) ws.reduced[r].erase(k);
      }
      for (std::size_t j = 0; j < rc.size(); ++j) ws.reduced_coord[r][j] -= f * rc[j];
    }
    ws.members.push_back(idx);
    ws.pivots.push_back(pivot);
    ws.reduced.push_back(std::move(rem));
    ws.reduced_coord.push_back(std::move(rc));
    return true;
  };

  std::vector<int> top(amb.factors.size());
  for (std::size_t i = 0; i < top.size(); ++i) top[i] = amb.factors[i]->highest;
  detail::SparseVec hv{{amb.encode(top), Q(1)}};
  std::vector<int> hw = lambda.coords;
  try_add(hv, hw);

  std::deque<int> queue{0};
  while (!queue.empty()) {
    int j = queue.front();
    queue.pop_front();
    for (int k = 0; k < g.rank; ++k) {
      auto w = amb.act(g.f[k], vecs[j]);
      if (w.empty()) continue;
      // weight shift by -alpha_k in Dynkin labels: subtract column k of the Cartan matrix
      auto wt = wts[j];
      wt[k] -= 2;
      if (k > 0) wt[k - 1] += 1;
      if (k + 1 < g.rank) wt[k + 1] += 1;
      if (try_add(w, wt)) queue.push_back(static_cast<int>(vecs.size()) - 1);
    }
  }

  m.dimension = static_cast<int>(vecs.size());
  m.weight_of_basis = wts;
  m.action.assign(g.dim(), Matrix(m.dimension, m.dimension));
  for (int a = 0; a < g.dim(); ++a) {
    // weight shift of x_a in Dynkin labels: sum_k root_k * (column k of Cartan matrix)
    std::vector<int> shift(g.rank, 0);
    for (int k = 0; k < g.rank; ++k) {
      int r = g.roots[a][k];
      shift[k] += 2 * r;
      if (k > 0) shift[k - 1] -= r;
      if (k + 1 < g.rank) shift[k + 1] -= r;
    }
    for (int j = 0; j < m.dimension; ++j) {
      auto img = amb.act(a, vecs[j]);
      if (img.empty()) continue;
      std::vector<int> wt = wts[j];
      for (int k = 0; k < g.rank; ++k) wt[k] += shift[k];
      auto it = spaces.find(wt);
      if (it == spaces.end()) throw CheckFailure("action left the module");
      auto [rem, coord] = it->second.reduce(img);
      if (!rem.empty()) throw CheckFailure("submodule not closed under the action");
      for (std::size_t t = 0; t < coord.size(); ++t)
        if (sgn(coord[t]) != 0) m.action[a](it->second.members[t], j) = coord[t];
    }
  }
  m.highest_index = 0;
  return m;
}

/// Multiplicity table: Dynkin label vector -> dimension of the weight space.
inline std::map<std::vector<int>, int> weight_multiplicities(const FiniteModule& m) {
  std::map<std::vector<int>, int> out;
  for (const auto& w : m.weight_of_basis) ++out[w];
  return out;
}

}  // namespace tek
