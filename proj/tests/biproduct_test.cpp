#include <gtest/gtest.h>

#include "prodsum/biproduct.hpp"
#include "prodsum/finab.hpp"
#include "prodsum/lattice.hpp"

using namespace prodsum;

namespace {

FinAbModel fa;
LatticeModel la;

// every element of a finab object, first coordinate fastest
std::vector<std::vector<long>> elements(const FinAbObject& x) {
  std::vector<std::vector<long>> out;
  for (std::size_t k = 0; k < x.order(); ++k) {
    std::vector<long> v(x.rank());
    std::size_t rest = k;
    for (std::size_t i = 0; i < x.rank(); ++i) {
      v[i] = static_cast<long>(rest % x.moduli[i]);
      rest /= x.moduli[i];
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(Biproduct, FinabZ2PlusZ3) {
  auto b = build_biproduct(fa, FinAbModel::Z({2}), FinAbModel::Z({3}));
  EXPECT_EQ(b.object.order(), 6u);
  // oracle: apply each relation to all elements
  for (const auto& x : elements(FinAbModel::Z({2}))) {
    EXPECT_EQ(b.projections[0].apply(b.injections[0].apply(x)), x);
    EXPECT_EQ(b.projections[1].apply(b.injections[0].apply(x)), std::vector<long>{0});
  }
  for (const auto& y : elements(FinAbModel::Z({3}))) {
    EXPECT_EQ(b.projections[1].apply(b.injections[1].apply(y)), y);
    EXPECT_EQ(b.projections[0].apply(b.injections[1].apply(y)), std::vector<long>{0});
  }
  EXPECT_TRUE(verify_biproduct(fa, b).passed);
}

TEST(Biproduct, ZeroSummandIsUnit) {
  auto y = FinAbModel::Z({4});
  auto b = build_biproduct(fa, fa.zero_object(), y);
  EXPECT_EQ(b.object, y);
  EXPECT_TRUE(fa.equal(b.projections[1], fa.identity(y)));
}

TEST(Biproduct, LatticeTwoChains) {
  auto c = LatticeObject::chain(2);
  auto b = build_biproduct(la, c, c);
  EXPECT_EQ(b.object.size(), 4u);
  for (int x = 0; x < 2; ++x) {
    EXPECT_EQ(b.projections[0](b.injections[0](x)), x);
    EXPECT_EQ(b.projections[1](b.injections[0](x)), 0);
  }
}

TEST(Biproduct, NaryLeftNestedMatchesFlatConcatenation) {
  auto b = build_biproduct(fa, {FinAbModel::Z({2}), FinAbModel::Z({3}), FinAbModel::Z({4})});
  EXPECT_EQ(b.object, FinAbModel::Z({2, 3, 4}));
  auto r = verify_biproduct(fa, b);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.checks, 10u);
  auto e = build_biproduct(fa, std::vector<FinAbObject>{});
  EXPECT_EQ(e.object, fa.zero_object());
}

TEST(Biproduct, TupleAndCotupleSatisfyUniversalEquations) {
  auto fam = std::vector<FinAbObject>{FinAbModel::Z({2}), FinAbModel::Z({4}), FinAbModel::Z({2})};
  auto b = build_biproduct(fa, fam);
  auto w = FinAbModel::Z({4});
  auto fs = std::vector<FinAbMorphism>{fa.hom(w, fam[0])[1], fa.hom(w, fam[1])[3], fa.hom(w, fam[2])[0]};
  auto t = tuple(fa, b, fs);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_TRUE(fa.equal(fa.compose(b.projections[k], t), fs[k]));
  auto gs = std::vector<FinAbMorphism>{fa.hom(fam[0], w)[1], fa.hom(fam[1], w)[3], fa.hom(fam[2], w)[1]};
  auto c = cotuple(fa, b, gs);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_TRUE(fa.equal(fa.compose(c, b.injections[k]), gs[k]));
  EXPECT_THROW(tuple(fa, b, {fs[0]}), ShapeMismatch);
}

TEST(SumViaBiproduct, FinabZ4OnePlusTwo) {
  auto z4 = FinAbModel::Z({4});
  auto s = sum_via_biproduct(fa, fa.scalar(z4, 1), fa.scalar(z4, 2));
  for (long x = 0; x < 4; ++x) EXPECT_EQ(s.apply({x}), std::vector<long>{(3 * x) % 4});
  auto g0 = sum_via_biproduct(fa, fa.scalar(z4, 1), fa.zero(z4, z4));
  EXPECT_TRUE(fa.equal(g0, fa.scalar(z4, 1)));
  EXPECT_THROW(sum_via_biproduct(fa, fa.scalar(z4, 1), fa.zero(z4, FinAbModel::Z({2}))),
               ParallelismViolation);
}

TEST(SumViaBiproduct, LatticeIdempotent) {
  auto c = LatticeObject::chain(2);
  EXPECT_TRUE(la.equal(sum_via_biproduct(la, la.identity(c), la.identity(c)), la.identity(c)));
}

TEST(SumViaBiproduct, AgreesWithHomAdditionEverywhereSmall) {
  for (const auto& x : FinAbModel::groups_up_to(4))
    for (const auto& y : FinAbModel::groups_up_to(4)) {
      auto hs = fa.hom(x, y);
      for (const auto& f : hs)
        for (const auto& g : hs) {
          EXPECT_TRUE(fa.equal(sum_via_biproduct(fa, f, g), fa.add(f, g)));
          EXPECT_TRUE(intro_sum_identity_holds(fa, f, g));
        }
    }
  for (const auto& x : LatticeObject::all_up_to(3))
    for (const auto& y : LatticeObject::all_up_to(3)) {
      auto hs = la.hom(x, y);
      for (const auto& f : hs)
        for (const auto& g : hs) EXPECT_TRUE(la.equal(sum_via_biproduct(la, f, g), la.add(f, g)));
    }
}

TEST(Canonical, FinabPairIsDiagonalIdentity) {
  auto c = canonical_morphism(fa, {FinAbModel::Z({2}), FinAbModel::Z({3})});
  EXPECT_TRUE(c.invertible);
  EXPECT_TRUE(is_delta_identity(fa, c.theta, c.sum));
  EXPECT_TRUE(fa.equal(c.forward, fa.identity(c.sum.object)));
}

TEST(Canonical, SingletonIsIdentity) {
  auto c = canonical_morphism(fa, {FinAbModel::Z({5})});
  EXPECT_TRUE(fa.equal(c.forward, fa.identity(FinAbModel::Z({5}))));
}

TEST(Canonical, LatticeFourChainsBijective) {
  auto ch = LatticeObject::chain(2);
  auto c = canonical_morphism(la, {ch, ch, ch, ch});
  EXPECT_TRUE(c.invertible);
  std::vector<bool> seen(c.sum.object.size(), false);
  for (int z = 0; z < static_cast<int>(seen.size()); ++z) seen.at(c.forward(z)) = true;
  for (bool s : seen) EXPECT_TRUE(s);
}

TEST(Canonical, FinabSizesOneToSix) {
  std::vector<FinAbObject> pool = {FinAbModel::Z({2}), FinAbModel::Z({3}), FinAbModel::Z({4}),
                                   FinAbModel::Z({2, 2}), FinAbModel::Z({5}), FinAbModel::Z({6})};
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<FinAbObject> fam(pool.begin(), pool.begin() + static_cast<long>(n));
    auto c = canonical_morphism(fa, fam);
    EXPECT_TRUE(c.invertible) << n;
  }
}

TEST(Theta, SwapGivesPermutationAndZeroGivesZero) {
  auto z2 = FinAbModel::Z({2});
  auto c = canonical_morphism(fa, {z2, z2});
  auto swap = cotuple(fa, c.sum, {c.sum.injections[1], c.sum.injections[0]});
  auto th = theta_components(fa, fa.compose(c.forward, swap), c.sum);
  EXPECT_TRUE(fa.equal(th.at(0, 1), fa.identity(z2)));
  EXPECT_TRUE(fa.equal(th.at(0, 0), fa.zero(z2, z2)));
  auto tz = theta_components(fa, fa.zero(c.sum.object, c.sum.object), c.sum);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l) EXPECT_TRUE(fa.equal(tz.at(k, l), fa.zero(z2, z2)));
  EXPECT_THROW(theta_components(fa, fa.identity(z2), c.sum), ShapeMismatch);
}

namespace {

ThetaComponent<FinAbModel> canonical_theta() {
  return [](const Biproduct<FinAbModel>& b) { return canonical_morphism(fa, b.summands).forward; };
}

// canonical map precomposed with negation of slot 1
ThetaComponent<FinAbModel> negated_theta() {
  return [](const Biproduct<FinAbModel>& b) {
    std::vector<FinAbMorphism> comps;
    for (std::size_t k = 0; k < b.size(); ++k)
      comps.push_back(k == 1 ? fa.negate(fa.identity(b.summands[k])) : fa.identity(b.summands[k]));
    return fa.compose(canonical_morphism(fa, b.summands).forward, direct_sum_map(fa, b, b, comps));
  };
}

// Λ is ×2 on Z/4 and identity elsewhere: not natural for Z/2 -> Z/4
ThetaComponent<FinAbModel> unnatural_theta() {
  return [](const Biproduct<FinAbModel>& b) {
    std::vector<FinAbMorphism> comps;
    for (const auto& x : b.summands)
      comps.push_back(x == FinAbModel::Z({4}) ? fa.scalar(x, 2) : fa.identity(x));
    return direct_sum_map(fa, b, b, comps);
  };
}

const std::vector<FinAbObject> kObjs = {FinAbObject{}, FinAbModel::Z({2}), FinAbModel::Z({3}),
                                        FinAbModel::Z({4})};
const std::vector<std::vector<FinAbObject>> kFams = {
    {FinAbModel::Z({2}), FinAbModel::Z({3})},
    {FinAbModel::Z({4}), FinAbModel::Z({2})},
    {FinAbModel::Z({3}), FinAbModel::Z({4})}};

}  // namespace

TEST(Gen1, CanonicalPasses) {
  auto d = verify_gen1(fa, canonical_theta(), kFams, kObjs, 2);
  EXPECT_TRUE(d.report.passed) << d.report.counterexample;
  for (std::size_t x = 0; x < kObjs.size(); ++x)
    EXPECT_TRUE(fa.equal(d.lambda[0][x], fa.identity(kObjs[x])));
}

TEST(Gen1, SlotNegationPassesWithMinusIdentity) {
  auto d = verify_gen1(fa, negated_theta(), kFams, kObjs, 2);
  EXPECT_TRUE(d.report.passed) << d.report.counterexample;
  EXPECT_TRUE(fa.equal(d.lambda[1][3], fa.scalar(FinAbModel::Z({4}), -1)));
}

TEST(Gen1, UnnaturalFamilyFails) {
  auto d = verify_gen1(fa, unnatural_theta(), kFams, kObjs, 2);
  EXPECT_FALSE(d.report.passed);
  EXPECT_NE(d.report.counterexample.find("(iii)"), std::string::npos) << d.report.counterexample;
}

TEST(Reduce, CanonicalNeedsNoCorrection) {
  auto reds = reduce_to_canonical(fa, canonical_theta(), kFams);
  for (std::size_t i = 0; i < reds.size(); ++i) {
    EXPECT_TRUE(reds[i].equals_canonical);
    EXPECT_TRUE(fa.equal(reds[i].correction, fa.identity(build_biproduct(fa, kFams[i]).object)));
  }
}

TEST(Reduce, SlotNegationCorrected) {
  Report nat;
  auto reds = reduce_to_canonical(fa, negated_theta(), kFams, &nat);
  for (const auto& r : reds) EXPECT_TRUE(r.equals_canonical);
  // L negates slot 1: on Z/2+Z/3 the second generator maps to -1
  EXPECT_EQ(reds[0].correction.at(1, 1), 2);
  EXPECT_EQ(reds[0].correction.at(0, 0), 1);
  EXPECT_TRUE(nat.passed) << nat.counterexample;
}

TEST(Reduce, LatticeZeroLambdaNotInvertible) {
  ThetaComponent<LatticeModel> zero_theta = [](const Biproduct<LatticeModel>& b) {
    return la.zero(b.object, b.object);
  };
  auto c = LatticeObject::chain(2);
  EXPECT_THROW(reduce_to_canonical(la, zero_theta, {{c, c}}), NotInvertible);
}

TEST(Adjunction, UnitAndCounitNatural) {
  auto a = build_biproduct(fa, {FinAbModel::Z({2}), FinAbModel::Z({4})});
  auto b = build_biproduct(fa, {FinAbModel::Z({4}), FinAbModel::Z({4})});
  DiagonalAdjunction<FinAbModel> adj{a};
  auto fs = std::vector<FinAbMorphism>{fa.hom(a.summands[0], b.summands[0])[1],
                                       fa.hom(a.summands[1], b.summands[1])[3]};
  auto r = adj.check_naturality(fa, b, fs);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.checks, 4u);
}
