#include <gtest/gtest.h>

#include <numeric>

#include "prodsum/finab.hpp"

using namespace prodsum;

TEST(FinAb, HomZ2ToZ4HasTwoMaps) {
  FinAbModel m;
  auto homs = m.hom(FinAbModel::Z({2}), FinAbModel::Z({4}));
  ASSERT_EQ(homs.size(), 2u);
  EXPECT_EQ(homs[0].at(0, 0), 0);
  EXPECT_EQ(homs[1].at(0, 0), 2);
}

TEST(FinAb, HomZ2ToZ3IsZeroOnly) {
  FinAbModel m;
  auto homs = m.hom(FinAbModel::Z({2}), FinAbModel::Z({3}));
  ASSERT_EQ(homs.size(), 1u);
  EXPECT_TRUE(m.equal(homs[0], m.zero(FinAbModel::Z({2}), FinAbModel::Z({3}))));
}

TEST(FinAb, HomCountMatchesGcdFormula) {
  // |Hom(Z/a, Z/b)| = gcd(a, b), multiplicative over components
  FinAbModel m;
  for (long a = 1; a <= 8; ++a)
    for (long b = 1; b <= 8; ++b)
      EXPECT_EQ(m.hom(FinAbModel::Z({a}), FinAbModel::Z({b})).size(),
                static_cast<std::size_t>(std::gcd(a, b)));
  EXPECT_EQ(m.hom(FinAbModel::Z({2, 4}), FinAbModel::Z({4})).size(), 2u * 4u);
}

TEST(FinAb, OrderConditionEnforcedAtConstruction) {
  EXPECT_THROW(FinAbMorphism(FinAbModel::Z({2}), FinAbModel::Z({4}), {1}), InvalidMorphism);
  EXPECT_THROW(FinAbMorphism(FinAbModel::Z({2}), FinAbModel::Z({4}), {1, 2}), InvalidMorphism);
  EXPECT_THROW(FinAbModel::Z({0}), InvalidObject);
}

TEST(FinAb, EveryMorphismHasANegative) {
  FinAbModel m;
  for (const auto& x : FinAbModel::groups_up_to(8))
    for (const auto& f : m.hom(x, x)) {
      auto neg = find_negative(m, f);
      ASSERT_TRUE(neg.has_value());
      EXPECT_TRUE(m.equal(*neg, m.negate(f)));
    }
}

TEST(FinAb, GroupsUpToEightAreTheInvariantFactorLists) {
  auto gs = FinAbModel::groups_up_to(8);
  // 0, Z2, Z3, Z4, Z2+Z2, Z5, Z6, Z7, Z8, Z2+Z4, Z2+Z2+Z2
  EXPECT_EQ(gs.size(), 11u);
  std::size_t order8 = 0;
  for (const auto& g : gs) order8 += g.order() == 8;
  EXPECT_EQ(order8, 3u);
}

TEST(FinAb, CompositionMatchesPointwiseApplication) {
  FinAbModel m;
  auto x = FinAbModel::Z({2, 4});
  auto y = FinAbModel::Z({4});
  auto fs = m.hom(x, y);
  auto gs = m.hom(y, x);
  for (const auto& f : fs)
    for (const auto& g : gs) {
      auto gf = m.compose(g, f);
      for (long a = 0; a < 2; ++a)
        for (long b = 0; b < 4; ++b) EXPECT_EQ(gf.apply({a, b}), g.apply(f.apply({a, b})));
    }
}

TEST(FinAb, EnrichmentOnAllGroupsUpToEight) {
  FinAbModel m;
  auto r = check_enrichment(m, FinAbModel::groups_up_to(8));
  EXPECT_TRUE(r.passed) << r.counterexample;
  EXPECT_EQ(r.mode, "exhaustive");
}

TEST(FinAb, BinarySumUniversalMaps) {
  FinAbModel m;
  auto x = FinAbModel::Z({2});
  auto y = FinAbModel::Z({3});
  auto s = m.sum2(x, y);
  EXPECT_EQ(s.object.order(), 6u);
  auto w = FinAbModel::Z({6});
  for (const auto& f : m.hom(w, x))
    for (const auto& g : m.hom(w, y)) {
      auto t = m.tuple2(f, g, s);
      EXPECT_TRUE(m.equal(m.compose(s.p, t), f));
      EXPECT_TRUE(m.equal(m.compose(s.q, t), g));
    }
  for (const auto& f : m.hom(x, w))
    for (const auto& g : m.hom(y, w)) {
      auto t = m.cotuple2(f, g, s);
      EXPECT_TRUE(m.equal(m.compose(t, s.i), f));
      EXPECT_TRUE(m.equal(m.compose(t, s.j), g));
    }
}
