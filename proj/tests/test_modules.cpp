#include <gtest/gtest.h>

#include "oracles/freudenthal.hpp"
#include "printers.hpp"

using namespace tek;

namespace {

constexpr int E = 0, H = 1, F = 2;

AlgebraElement el(Sym s, Q c = 1) { return AlgebraElement(s, c); }

AlgebraConfig sl2(Q mu = 0) { return make_config(1, mu); }

ModuleVector vec(Exp2 n, int u = 0, int v = 0, int loop = 0) { return ModuleVector(BasisKey{n, u, v, loop}); }

}  // namespace

TEST(TypeI, SkewActsThroughTheSl2Matrix) {
  const Module m(sl2(), TypeISpec{2, {1}, {}, {}});
  // lower vector u_1; e.u_1 = u_0
  EXPECT_EQ(m.act(el(Sym::skew({1, 0})), vec({0, 0}, 1)), vec({1, 0}, 0));
  EXPECT_TRUE(m.act(el(Sym::skew({1, 0})), vec({0, 0}, 0)).is_zero());
}

TEST(TypeI, DegreeAndCentralActions) {
  const Module m(sl2(), TypeISpec{1, {2}, {}, {Q(1, 2), Q(0)}});
  EXPECT_EQ(m.act(el(Sym::d(0)), vec({2, 3})), Q(5, 2) * vec({2, 3}));
  EXPECT_TRUE(m.act(el(Sym::k(0, {1, 1})), vec({2, 3})).is_zero());
  EXPECT_EQ(m.act(el(Sym::loop({1, -1}, H)), vec({0, 0})), Q(2) * vec({1, -1}));
  EXPECT_EQ(m.central_charge(vec({0, 0})), (Vec2{Q(0), Q(0)}));
}

TEST(TypeI, WeightAndDomain) {
  const Module m(sl2(), TypeISpec{1, {3}, {}, {}});
  const ModuleWeight w = m.weight_of(vec({2, 3}));
  EXPECT_EQ(w.h, std::vector<Q>{Q(3)});
  EXPECT_EQ(w.d0, Q(2));
  EXPECT_EQ(w.d1, Q(3));
  EXPECT_THROW(m.act(el(Sym::loop({0, 0}, E)), vec({0, 0})), SemanticError);
  EXPECT_THROW(m.weight_of(vec({0, 0}) + vec({1, 0})), SemanticError);
  EXPECT_THROW(Module(sl2(), TypeISpec{1, {0}, {}, {}}), SemanticError);
  EXPECT_THROW(Module(sl2(), TypeISpec{0, {1}, {}, {}}), SemanticError);
}

TEST(GMod, CartanLoopAction) {
  const Module m(sl2(), GModSpec{1, {2}, {Q(1, 3)}, {}, {}});
  GElement h0, h10;
  h0.add_h({0, 0}, H, Q(1));
  h10.add_h({1, 0}, H, Q(1));
  EXPECT_EQ(m.act_g(h0, vec({2, 1})), Q(7, 3) * vec({2, 1}));
  EXPECT_EQ(m.act_g(h10, vec({0, 0})), Q(2) * vec({1, 0}));
  const Module zero(sl2(), GModSpec{1, {0}, {Q(1, 3)}, {}, {}});
  EXPECT_TRUE(zero.act_g(h10, vec({0, 0})).is_zero());
  EXPECT_EQ(zero.act_g(h0, vec({0, 0})), Q(1, 3) * vec({0, 0}));
}

TEST(GMod, AgreesWithTheAlgebraAction) {
  const AlgebraConfig cfg = sl2(Q(1, 2));
  const Module m(cfg, GModSpec{2, {1}, {Q(-2, 5)}, {Q(1, 2), Q(0)}, {Q(0), Q(1, 3)}});
  for (const Sym& s : m.algebra_basis(1))
    for (const auto& k : m.basis(1)) {
      const AlgebraElement x(s);
      EXPECT_EQ(m.act(x, ModuleVector(k)), m.act_g(to_g_element(cfg, x), ModuleVector(k)));
    }
}

TEST(Realization, Examples) {
  const Module m(sl2(), RealizationSpec{2, {2}, {}, {}});
  const ModuleVector top = vec({0, 0}, 0, 0);
  const ModuleVector r = m.act(el(Sym::loop({1, 0}, F)), top);
  EXPECT_EQ(r, vec({1, 0}, 0, 1));
  EXPECT_TRUE(m.act(el(Sym::k(1, {5, 7})), top).is_zero());
  // d_(0,1) acts on U by -f
  EXPECT_EQ(m.act(el(Sym::skew({0, 1})), top), Q(-1) * vec({0, 1}, 1, 0));
}

TEST(Realization, KActsTrivially) {
  const Module m(make_config(2, Q(1)), RealizationSpec{2, {1, 1}, {Q(1, 2), Q(0)}, {}});
  for (const auto& k : m.basis(1))
    for (int j = 0; j < 2; ++j)
      for (const Exp2 n : {Exp2{0, 0}, Exp2{1, -1}, Exp2{2, 0}})
        EXPECT_TRUE(m.act(el(Sym::k(j, n)), ModuleVector(k)).is_zero());
}

TEST(Realization, WeightOf) {
  const Module m(sl2(), RealizationSpec{1, {2}, {}, {Q(1, 2), Q(-1)}});
  const ModuleWeight w = m.weight_of(vec({0, 0}));
  EXPECT_EQ(w.h, std::vector<Q>{Q(2)});
  EXPECT_EQ(w.d0, Q(1, 2));
  EXPECT_EQ(w.d1, Q(-1));
}

class RealizationWeights : public ::testing::TestWithParam<std::tuple<int, std::vector<int>, int>> {};

TEST_P(RealizationWeights, MatchFreudenthalTimesDimU) {
  const auto& [rank, lambda, du] = GetParam();
  const Vec2 gp{Q(1, 3), Q(-1, 2)};
  const Module m(make_config(rank, Q(0)), RealizationSpec{du, lambda, {}, gp});
  const auto mult = oracle::freudenthal(lambda);
  const int box = 1;
  std::map<ModuleWeight, int> want;
  for (int n0 = -box; n0 <= box; ++n0)
    for (int n1 = -box; n1 <= box; ++n1)
      for (const auto& [beta, k] : mult) {
        ModuleWeight w;
        for (int b : beta) w.h.push_back(Q(b));
        w.d0 = n0 + gp[0];
        w.d1 = n1 + gp[1];
        want[w] = du * k;
      }
  EXPECT_EQ(m.weight_table(box), want);
}

INSTANTIATE_TEST_SUITE_P(Ranks, RealizationWeights,
                         ::testing::Values(std::make_tuple(1, std::vector<int>{3}, 2),
                                           std::make_tuple(2, std::vector<int>{1, 1}, 1),
                                           std::make_tuple(2, std::vector<int>{2, 0}, 2),
                                           std::make_tuple(3, std::vector<int>{1, 0, 1}, 1)));

TEST(Realization, EvaluationPropertyOnTheTopVector) {
  const Module m(sl2(), RealizationSpec{1, {2}, {}, {}});
  for (int j = -4; j <= 4; ++j) EXPECT_EQ(m.act(el(Sym::loop({0, j}, H)), vec({0, 0})), Q(2) * vec({0, j}));
}

TEST(Heisenberg, ActExamples) {
  HeisenbergFunctional psi;
  psi.base = sl2().base;
  psi.direct_table[{HKind::Cartan, 2, H}] = Q(5);
  EXPECT_EQ(heisenberg_act(psi, {HKind::Cartan, 2, H}, 3), std::make_pair(Q(5), 5));
  EXPECT_EQ(heisenberg_act(psi, {HKind::K1, 0, 0}, 7).first, Q(0));
  const ExpPolynomial phi({{Q(1), 1, Q(2)}});  // n 2^n
  const auto t = psi_from_triple(sl2().base, {{{1}, Q(0), Q(1)}}, {Q(1)}, phi, Q(0));
  for (int m : {-3, -1, 1, 2, 5}) {
    const auto [c, p] = heisenberg_act(t, {HKind::D0, m, 0}, 0);
    EXPECT_EQ(c, phi(m) / (m * m));
    EXPECT_EQ(p, m);
  }
}

TEST(Heisenberg, ModuleAction) {
  HeisenbergFunctional psi;
  psi.base = sl2().base;
  psi.direct_table[{HKind::K0, 0, 0}] = Q(3);
  psi.direct_table[{HKind::D0, 2, 0}] = Q(1, 4);
  const Module m(sl2(), HeisenbergSpec{psi, Q(1, 2)});
  EXPECT_EQ(m.act(el(Sym::d(1)), vec({0, 3})), Q(7, 2) * vec({0, 3}));
  EXPECT_EQ(m.act(el(Sym::k(0)), vec({0, 3})), Q(3) * vec({0, 3}));
  EXPECT_TRUE(m.act(el(Sym::k(1)), vec({0, 3})).is_zero());
  // d_(0,2) = -2 t1^2 d0
  EXPECT_EQ(m.act(el(Sym::skew({0, 2})), vec({0, 1})), Q(-1, 2) * vec({0, 3}));
  EXPECT_THROW(m.act(el(Sym::loop({1, 0}, H)), vec({0, 0})), SemanticError);
}

TEST(Heisenberg, SupportGcdExamples) {
  const auto base = sl2().base;
  const auto r1 = psi_from_triple(base, {{{0}, Q(0), Q(1)}}, {Q(1)}, {}, Q(0));
  EXPECT_EQ(support_gcd(r1, 10).r, 1);
  EXPECT_EQ(r1({HKind::K0, 7, 0}), Q(1));
  HeisenbergFunctional t2;
  t2.base = base;
  for (int n : {-4, -2, 2, 4}) t2.direct_table[{HKind::Cartan, n, H}] = Q(1);
  const auto rep = support_gcd(t2, 10);
  EXPECT_EQ(rep.r, 2);
  EXPECT_EQ(rep.probed_to, 10);
  EXPECT_EQ(rep.support, (std::vector<int>{-4, -2, 2, 4}));
  HeisenbergFunctional zero;
  zero.base = base;
  EXPECT_EQ(support_gcd(zero, 10).r, 0);
  EXPECT_THROW(support_gcd(zero, 0), SemanticError);
}

TEST(Heisenberg, Decompose) {
  const auto base = sl2().base;
  const auto r1 = psi_from_triple(base, {{{0}, Q(0), Q(1)}}, {Q(1)}, {}, Q(0));
  const auto c1 = heisenberg_decompose(r1, 1, 8);
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_TRUE(c1[0].spans);
  EXPECT_EQ(c1[0].reached, 17);
  HeisenbergFunctional t2;
  t2.base = base;
  for (int n : {-2, 2}) t2.direct_table[{HKind::K0, n, 0}] = Q(1);
  const auto c2 = heisenberg_decompose(t2, 2, 8);
  ASSERT_EQ(c2.size(), 2u);
  EXPECT_TRUE(c2[0].spans && c2[1].spans);
  EXPECT_EQ(c2[0].reached, 9);
  EXPECT_EQ(c2[1].reached, 8);
  HeisenbergFunctional zero;
  zero.base = base;
  const auto c0 = heisenberg_decompose(zero, 0, 8);
  ASSERT_EQ(c0.size(), 1u);
  EXPECT_TRUE(c0[0].spans);
  EXPECT_THROW(heisenberg_decompose(t2, 1, 8), CheckFailure);
}

TEST(Heisenberg, FixturesPass) {
  const Report r = check_heisenberg(heisenberg_fixtures(sl2()), 24);
  EXPECT_TRUE(r.passed()) << r.to_text();
}

TEST(PsiFromTriple, Examples) {
  const auto base = sl2().base;
  const auto psi = psi_from_triple(base, {{{1}, Q(5, 2), Q(2)}}, {Q(3)}, {}, Q(0));
  EXPECT_EQ(psi({HKind::K0, 2, 0}), Q(18));
  EXPECT_EQ(psi({HKind::D0, 0, 0}), Q(5, 2));
  EXPECT_EQ(psi({HKind::K1, 0, 0}), Q(0));
  EXPECT_EQ(psi({HKind::Cartan, 2, H}), Q(9));
  const auto v = psi_from_triple(base, {{{1}, Q(5, 2), Q(2)}}, {Q(3)}, {}, Q(1, 2), true);
  EXPECT_EQ(v({HKind::D0, 2, 0}), Q(9) * (Q(5, 2) + Q(1)));
}

TEST(PsiFromTriple, RejectsBadData) {
  const auto base = sl2().base;
  EXPECT_THROW(psi_from_triple(base, {{{0}, Q(0), Q(0)}}, {Q(1)}, {}, Q(0)), SemanticError);
  EXPECT_THROW(psi_from_triple(base, {{{1}, Q(0), Q(1)}, {{1}, Q(0), Q(1)}}, {Q(2), Q(2)}, {}, Q(0)), SemanticError);
  EXPECT_THROW(psi_from_triple(base, {{{1}, Q(0), Q(1)}}, {Q(0)}, {}, Q(0)), SemanticError);
  EXPECT_THROW(psi_from_triple(base, {{{1}, Q(0), Q(1)}}, {Q(1)}, ExpPolynomial({{Q(1), 0, Q(2)}}), Q(0)),
               SemanticError);
}

TEST(LoopModule, Examples) {
  const Module m(sl2(), LoopSpec{RealizationSpec{1, {1}, {}, {}}});
  EXPECT_EQ(loop_act(m, el(Sym::d(1)), vec({0, 0}, 0, 0, 5)), Q(5) * vec({0, 0}, 0, 0, 5));
  EXPECT_EQ(loop_act(m, el(Sym::loop({0, 2}, F)), vec({0, 0}, 0, 0, 3)), vec({0, 2}, 0, 1, 5));
  EXPECT_EQ(loop_act(m, el(Sym::loop({0, 0}, F)), vec({0, 0}, 0, 0, 0)), vec({0, 0}, 0, 1, 0));
  EXPECT_THROW(loop_act(m, el(Sym::loop({0, 1}, F)) + el(Sym::loop({0, 2}, E)), vec({0, 0})), SemanticError);
  EXPECT_THROW(loop_act(Module(sl2(), TypeISpec{1, {1}, {}, {}}), el(Sym::d(1)), vec({0, 0})), SemanticError);
}

TEST(LoopModule, GradingIsRespected) {
  const Module m(sl2(), LoopSpec{RealizationSpec{2, {1}, {}, {}}});
  const ModuleVector w = vec({0, 0}, 0, 0, 2);
  for (const Sym& s : m.algebra_basis(1)) {
    if (s.kind == Kind::D) continue;
    const ModuleVector r = loop_act(m, AlgebraElement(s), w);
    for (const auto& [k, c] : r.terms()) EXPECT_EQ(k.loop, 2 + s.m.m1);
    if (!r.is_zero()) {
      const ModuleVector dr = m.act(el(Sym::d(1)), r);
      EXPECT_EQ(dr, Q(2 + s.m.m1) * r);
    }
  }
}

TEST(Twist, IdentityAndComposition) {
  const AlgebraConfig cfg = sl2(Q(1));
  const Module m(cfg, RealizationSpec{2, {1}, {Q(1, 2), Q(0)}, {Q(0), Q(1, 3)}});
  const Module same = m.twisted(Mat2{});
  const Mat2 a{1, 1, 0, 1}, b{0, 1, -1, 0};
  const Module ab = m.twisted(a).twisted(b), direct = m.twisted(a * b);
  for (const Sym& s : m.algebra_basis(1))
    for (const auto& k : m.basis(1)) {
      const AlgebraElement x(s);
      const ModuleVector w(k);
      EXPECT_EQ(same.act(x, w), m.act(x, w));
      EXPECT_EQ(ab.act(x, w), direct.act(x, w));
    }
  EXPECT_THROW(m.twisted(Mat2{2, 0, 0, 1}), SemanticError);
}

TEST(Twist, CentralChargeTransforms) {
  const AlgebraConfig cfg = sl2(Q(0));
  HeisenbergFunctional psi;
  psi.base = cfg.base;
  psi.direct_table[{HKind::K0, 0, 0}] = Q(2);
  const Module m(cfg, HeisenbergSpec{psi, Q(0)});
  const ModuleVector w = vec({0, 1});
  for (const Mat2& a : {Mat2{0, 1, 1, 0}, Mat2{1, 0, 0, -1}}) {
    EXPECT_EQ(m.twisted(a).central_charge(w), central_charge_transform(m.central_charge(w), a));
  }
}

TEST(Nilpotence, Examples) {
  const Module m(sl2(), RealizationSpec{1, {2}, {}, {}});
  const ModuleVector top = vec({0, 0});
  EXPECT_EQ(nilpotence_index(m, el(Sym::loop({0, 0}, F)), top, 16), 3);
  EXPECT_EQ(nilpotence_index(m, el(Sym::loop({1, 1}, E)), top, 16), 1);
  EXPECT_EQ(nilpotence_index(m, el(Sym::loop({0, 0}, F)), top, 2), std::nullopt);
  EXPECT_EQ(nilpotence_index(m, el(Sym::loop({0, 0}, F)), ModuleVector{}, 0), 0);
  const Module trivial(sl2(), RealizationSpec{1, {0}, {}, {}, true});
  for (int a : {E, F})
    for (const Exp2 n : {Exp2{0, 0}, Exp2{2, -1}}) EXPECT_EQ(nilpotence_index(trivial, el(Sym::loop(n, a)), top, 4), 1);
}

TEST(ModuleAxioms, SmallSweepPasses) {
  const AlgebraConfig cfg = sl2(Q(-3, 2));
  const std::vector<Module> mods = {
      Module(cfg, TypeISpec{2, {1}, {Q(1, 2), Q(0)}, {Q(0), Q(1)}}),
      Module(cfg, GModSpec{2, {1}, {Q(1, 3)}, {}, {}}),
      Module(cfg, RealizationSpec{3, {1}, {Q(0), Q(-1, 3)}, {}}),
  };
  const Report r = check_modules(mods, 1, 1);
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_GT(r.checked, 1000);
}
