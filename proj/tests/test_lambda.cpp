#include <gtest/gtest.h>

#include "oracles/series.hpp"
#include "printers.hpp"

using namespace tek;

namespace {

ModuleVector unit_vec(int u = 0) { return ModuleVector(BasisKey{{}, u, 0, 0}); }

std::shared_ptr<const CommutingFamily> scalar_family(std::function<Q(int)> x) {
  return std::make_shared<const CommutingFamily>([x](int k, const ModuleVector& v) { return x(k) * v; });
}

Q binom(const Q& c, int b) {
  Q out = 1;
  for (int i = 0; i < b; ++i) out *= (c - i) / Q(i + 1);
  return out;
}

ModuleVector top(Exp2 n = {}) { return ModuleVector(BasisKey{n, 0, 0, 0}); }

}  // namespace

TEST(Partitions, CountsAndBounds) {
  const std::vector<std::size_t> p = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (int b = 0; b <= kMaxSeriesDegree; ++b) EXPECT_EQ(partitions(b).size(), p[b]) << b;
  EXPECT_THROW(partitions(13), SemanticError);
  EXPECT_THROW(partitions(-1), SemanticError);
}

TEST(ExpSeries, ZeroFamily) {
  const OperatorSeries s(scalar_family([](int) { return Q(0); }), 6);
  EXPECT_EQ(s.apply(0, unit_vec()), unit_vec());
  for (int b = 1; b <= 6; ++b) EXPECT_TRUE(s.apply(b, unit_vec()).is_zero());
  EXPECT_THROW(s.apply(7, unit_vec()), SemanticError);
  EXPECT_THROW(OperatorSeries(scalar_family([](int) { return Q(0); }), 13), SemanticError);
}

TEST(ExpSeries, ScalarFamilyIsBinomial) {
  for (const Q& c : {Q(1), Q(3), Q(-2), Q(1, 2), Q(-5, 3)}) {
    const OperatorSeries s(scalar_family([c](int) { return c; }), 10);
    for (int b = 0; b <= 10; ++b) EXPECT_EQ(s.apply(b, unit_vec()), (b % 2 ? Q(-1) : Q(1)) * binom(c, b) * unit_vec());
  }
}

TEST(ExpSeries, MatchesNewtonOracle) {
  auto x = [](int k) -> Q { return Q(k * k - 3) / (k + 1); };
  std::vector<mpq_class> xs(13);
  for (int k = 1; k <= 12; ++k) xs[k] = x(k);
  const auto want = oracle::newton_exp(xs, 12);
  const OperatorSeries s(scalar_family(x), 12);
  for (int b = 0; b <= 12; ++b) EXPECT_EQ(s.apply(b, unit_vec()), want[b] * unit_vec()) << b;
}

TEST(ExpSeries, NilpotentFamily) {
  // N: u1 -> u0 -> 0 on a two-dimensional space; X_1 = N, X_k = 0 otherwise
  auto fam = std::make_shared<const CommutingFamily>([](int k, const ModuleVector& v) {
    ModuleVector out;
    if (k == 1) out.add(BasisKey{{}, 0, 0, 0}, v.coeff(BasisKey{{}, 1, 0, 0}));
    return out;
  });
  const OperatorSeries s(fam, 4);
  EXPECT_EQ(s.apply(1, unit_vec(1)), Q(-1) * unit_vec(0));
  EXPECT_TRUE(s.apply(2, unit_vec(1)).is_zero());
  EXPECT_TRUE(s.apply(1, unit_vec(0)).is_zero());
}

TEST(ExpSeries, CommutationProbe) {
  auto bad = std::make_shared<const CommutingFamily>([](int k, const ModuleVector& v) {
    ModuleVector out;
    // X_1 swaps u0, u1; X_2 scales u0 by 2
    for (const auto& [key, c] : v.terms()) {
      if (k == 1) out.add(BasisKey{{}, 1 - key.u, 0, 0}, c);
      if (k == 2) out.add(key, key.u == 0 ? 2 * c : c);
    }
    return out;
  });
  EXPECT_THROW(exp_series(bad, 3, {unit_vec(0), unit_vec(1)}), CheckFailure);
  EXPECT_NO_THROW(exp_series(scalar_family([](int k) { return Q(k); }), 3, {unit_vec()}));
  EXPECT_THROW(scalar_family([](int) { return Q(1); })->apply(0, unit_vec()), SemanticError);
}

TEST(LambdaAlphaMN, BinomialOnTheRealization) {
  const AlgebraConfig cfg = make_config(1, Q(0));
  for (int k = 1; k <= 4; ++k) {
    const Module mod(cfg, RealizationSpec{1, {k}, {}, {}});
    for (int n : {0, 3}) {
      const OperatorSeries s = lambda_alpha_m_n(mod, {1}, {1, 0}, n, 8);
      for (int b = 0; b <= 8; ++b) {
        const ModuleVector want = b <= k ? (b % 2 ? Q(-1) : Q(1)) * binom(Q(k), b) * top({b, 0}) : ModuleVector{};
        EXPECT_EQ(s.apply(b, top()), want) << k << " " << b;
      }
    }
  }
  const Report r = check_binomial(cfg, 4);
  EXPECT_TRUE(r.passed()) << r.to_text();
}

TEST(Lemma41, Examples) {
  const AlgebraConfig cfg = make_config(1, Q(0));
  const Module w(cfg, RealizationSpec{1, {1}, {}, {}});
  const Lemma41Report a = check_lemma_4_1(w, {1}, {1, 0}, top(), 6);
  EXPECT_TRUE(a.precondition);
  EXPECT_EQ(a.n_bar, 1);
  EXPECT_TRUE(a.passed());
  const OperatorSeries plus = lambda_alpha_m_n(w, {1}, {1, 0}, 0, 3), minus = lambda_alpha_m_n(w, {1}, {-1, 0}, 0, 3);
  EXPECT_EQ(plus.apply(1, top()), Q(-1) * top({1, 0}));
  EXPECT_EQ(minus.apply(1, top()), Q(-1) * top({-1, 0}));
  EXPECT_TRUE(plus.apply(2, top()).is_zero());

  const Module two(cfg, RealizationSpec{1, {2}, {}, {}});
  const OperatorSeries p2 = lambda_alpha_m_n(two, {1}, {1, 0}, 0, 3);
  EXPECT_EQ(p2.apply(2, top()), top({2, 0}));
  EXPECT_TRUE(p2.apply(3, top()).is_zero());
  EXPECT_TRUE(check_lemma_4_1(two, {1}, {0, 1}, top(), 8).passed());

  const Module triv(cfg, RealizationSpec{1, {0}, {}, {}, true});
  const Lemma41Report z = check_lemma_4_1(triv, {1}, {1, 0}, top(), 5);
  EXPECT_EQ(z.n_bar, 0);
  EXPECT_TRUE(z.passed());
  EXPECT_EQ(z.vanish_plus.size(), 5u);
}

TEST(Lemma41, PreconditionFailures) {
  const AlgebraConfig cfg = make_config(1, Q(0));
  const Module w(cfg, RealizationSpec{1, {2}, {}, {}});
  const ModuleVector lower(BasisKey{{}, 0, 1, 0});
  const Lemma41Report r = check_lemma_4_1(w, {1}, {1, 0}, lower, 4);
  EXPECT_FALSE(r.precondition);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.precondition_failure.empty());
  EXPECT_THROW(check_lemma_4_1(w, {-1}, {1, 0}, top(), 4), SemanticError);
}

TEST(Lemma41, Sl3HighestVector) {
  const AlgebraConfig cfg = make_config(2, Q(1));
  const Module w(cfg, RealizationSpec{1, {2, 1}, {}, {}});
  for (const Root& a : {Root{1, 0}, Root{0, 1}, Root{1, 1}}) {
    const Lemma41Report r = check_lemma_4_1(w, a, {1, -1}, top(), 6);
    EXPECT_TRUE(r.passed()) << a[0] << a[1];
  }
}

TEST(Strata, TopCoefficientAndRecombination) {
  const auto synth = fixtures::default_synthetic();
  const LambdaStrata s(synth.family(), 5);
  for (const auto& v : synth.basis()) {
    for (int b = 0; b <= 5; ++b) {
      EXPECT_EQ(s.stratum(b, 0, v), s.lambda1(b, v));
      EXPECT_EQ(s.stratum(b, b, v), s.top_expected(b, v));
      for (const Q& c : {Q(0), Q(1), Q(2), Q(-3, 2)}) EXPECT_EQ(s.combined(b, c, v), s.recombined(b, c, v));
    }
  }
  const Report r = check_strata(s, synth.basis(), Q(1), 5, 5, false, "synthetic");
  EXPECT_TRUE(r.passed()) << r.to_text();
}

TEST(Strata, KTrivialModulesHaveNoUpperStrata) {
  const AlgebraConfig cfg = make_config(1, Q(0));
  const Module t1(cfg, TypeISpec{2, {1}, {}, {}});
  const LambdaStrata s = lambda_s_decomposition(t1, {1}, {1, 0}, 4);
  for (const auto& k : t1.basis(1))
    for (int b = 1; b <= 4; ++b)
      for (int st = 1; st <= b; ++st) EXPECT_TRUE(s.stratum(b, st, ModuleVector(k)).is_zero());
}

TEST(Vandermonde, Examples) {
  EXPECT_EQ(vandermonde_extract(std::vector<Q>{Q(7)}, Q(1)), std::vector<Q>{Q(7)});
  EXPECT_EQ(vandermonde_extract(std::vector<Q>{Q(2), Q(5)}, Q(1)), (std::vector<Q>{Q(2), Q(3)}));
  // forward: values[n] = sum_s (r n)^s X_s
  const std::vector<Q> xs = {Q(1), Q(-2), Q(1, 3), Q(4)};
  const Q r(2, 3);
  std::vector<Q> vals(xs.size());
  for (std::size_t n = 0; n < xs.size(); ++n)
    for (std::size_t s = 0; s < xs.size(); ++s) vals[n] += pow_q(r * static_cast<long>(n), static_cast<long>(s)) * xs[s];
  EXPECT_EQ(vandermonde_extract(vals, r), xs);
  EXPECT_THROW(vandermonde_extract(std::vector<Q>{Q(1), Q(2)}, Q(0)), SemanticError);
  EXPECT_THROW(vandermonde_extract(std::vector<Q>{}, Q(1)), SemanticError);
  EXPECT_TRUE(check_vandermonde_roundtrip(3, 50).passed());
}

TEST(Vandermonde, RecoversSyntheticStrata) {
  const auto synth = fixtures::default_synthetic();
  const LambdaStrata s(synth.family(), 5);
  const Q ratio(1);
  for (const auto& v : synth.basis())
    for (int b = 0; b <= 5; ++b) {
      std::vector<ModuleVector> vals;
      for (int n = 0; n <= b; ++n) vals.push_back(s.combined(b, ratio * n, v));
      const auto xs = vandermonde_extract(vals, ratio);
      for (int st = 0; st <= b; ++st) EXPECT_EQ(xs[st], s.stratum(b, st, v));
    }
}

TEST(LambdaSuite, Passes) {
  const Report r = check_lambda(make_config(1, Q(0)), 1, 4, 4);
  EXPECT_TRUE(r.passed()) << r.to_text();
}
