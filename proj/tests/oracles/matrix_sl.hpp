#pragma once

// Plain n x n rational matrices for sl_n, built without the library's basis tables.

#include <gmpxx.h>

#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<mpq_class>>;

inline Mat zero(int n) { return Mat(n, std::vector<mpq_class>(n)); }

inline Mat unit(int n, int i, int j) {
  Mat m = zero(n);
  m[i][j] = 1;
  return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.size());
  Mat c = zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (sgn(a[i][k]) != 0)
        for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat sub(const Mat& a, const Mat& b) {
  Mat c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] -= b[i][j];
  return c;
}

inline Mat commutator(const Mat& a, const Mat& b) { return sub(mul(a, b), mul(b, a)); }

inline mpq_class trace_form(const Mat& a, const Mat& b) {
  const Mat p = mul(a, b);
  mpq_class t;
  for (std::size_t i = 0; i < p.size(); ++i) t += p[i][i];
  return t;
}

/// Coroot of the positive root alpha_i + ... + alpha_{j-1} (0-based i < j): E_ii - E_jj.
inline Mat coroot_matrix(int n, int i, int j) { return sub(unit(n, i, i), unit(n, j, j)); }

}  // namespace oracle
