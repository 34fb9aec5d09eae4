#pragma once

// Weights of Sym^k of the natural sl_{l+1} module by monomial enumeration.

#include <map>
#include <vector>

namespace oracle {

/// Dynkin labels of e_i in the natural module: eps_i has label +1 at i and -1 at i-1.
inline std::map<std::vector<int>, int> symmetric_power_weights(int l, int k) {
  const int n = l + 1;
  std::map<std::vector<int>, int> out;
  std::vector<int> exps(n, 0);
  auto emit = [&] {
    std::vector<int> w(l, 0);
    for (int i = 0; i < n; ++i) {
      if (i < l) w[i] += exps[i];
      if (i > 0) w[i - 1] -= exps[i];
    }
    ++out[w];
  };
  auto rec = [&](auto& self, int i, int rest) -> void {
    if (i == n - 1) {
      exps[i] = rest;
      emit();
      return;
    }
    for (int c = 0; c <= rest; ++c) {
      exps[i] = c;
      self(self, i + 1, rest - c);
    }
  };
  rec(rec, 0, k);
  return out;
}

}  // namespace oracle
