#include <gtest/gtest.h>

#include <random>
#include <set>

#include "prodsum/coring.hpp"

using namespace prodsum;

namespace {

/// R^(k) written out by hand: Δ(c_i) = c_i⊗c_i, ε(c_i) = 1.
Coring grouplike_by_hand(long n, std::size_t k) {
  Coring C;
  C.ring = FiniteRing(n);
  C.module = {std::vector<long>(k, n)};
  C.delta = LinearMap(C.module, tensor(C.module, C.module), n);
  C.eps = LinearMap(C.module, C.base(), n);
  for (std::size_t i = 0; i < k; ++i) {
    C.delta.m(i * k + i, i) = 1;
    C.eps.m(0, i) = 1;
  }
  return C;
}

RModule random_module(std::mt19937_64& rng, long n, std::size_t max_rank) {
  std::vector<long> divisors;
  for (long d = 2; d <= n; ++d)
    if (n % d == 0) divisors.push_back(d);
  RModule M;
  std::size_t k = rng() % (max_rank + 1);
  for (std::size_t i = 0; i < k; ++i) M.orders.push_back(divisors[rng() % divisors.size()]);
  return M;
}

/// The cofree comodule X⊗C with ρ = 1⊗Δ.
Comodule cofree(const RModule& X, const Coring& C) {
  return {tensor(X, C.module), tensor(identity_map(X, C.n()), C.delta)};
}

}  // namespace

TEST(Modular, DiagonalizationTransformsAreInverse) {
  std::mt19937_64 rng(7);
  for (long n : {2L, 4L, 6L, 12L})
    for (int trial = 0; trial < 30; ++trial) {
      ModMatrix A(1 + rng() % 5, 1 + rng() % 5, n);
      for (auto& x : A.a) x = static_cast<long>(rng() % n);
      auto z = diagonalize(A);
      EXPECT_EQ(z.U * z.Uinv, ModMatrix::identity(A.rows, n));
      EXPECT_EQ(z.V * z.Vinv, ModMatrix::identity(A.cols, n));
      EXPECT_EQ(z.U * A * z.V, z.D);
      for (std::size_t r = 0; r < z.D.rows; ++r)
        for (std::size_t c = 0; c < z.D.cols; ++c)
          if (r != c) EXPECT_EQ(z.D(r, c), 0);
    }
}

TEST(Modular, SolverAgreesWithEnumeration) {
  std::mt19937_64 rng(11);
  for (long n : {2L, 4L, 6L})
    for (int trial = 0; trial < 40; ++trial) {
      ModMatrix A(1 + rng() % 3, 1 + rng() % 3, n);
      for (auto& x : A.a) x = static_cast<long>(rng() % n);
      std::vector<long> b(A.rows);
      for (auto& x : b) x = static_cast<long>(rng() % n);
      bool exists = false;
      for (const auto& x : elements({std::vector<long>(A.cols, n)})) exists |= A.apply(x) == b;
      auto sol = solve_mod(A, b);
      ASSERT_EQ(sol.has_value(), exists);
      if (sol) EXPECT_EQ(A.apply(*sol), b);
    }
}

TEST(Modular, SubgroupPresentationHasTheRightOrder) {
  std::mt19937_64 rng(3);
  const long n = 12;
  for (int trial = 0; trial < 30; ++trial) {
    RModule G{{12, 6, 4}};
    std::vector<std::vector<long>> span(1 + rng() % 3);
    for (auto& v : span)
      for (long d : G.orders) v.push_back(static_cast<long>(rng() % d));
    // oracle: close the span under addition by enumeration
    std::set<std::vector<long>> H{{0, 0, 0}};
    for (bool grew = true; grew;) {
      grew = false;
      for (auto h : std::vector(H.begin(), H.end()))
        for (const auto& v : span) {
          for (std::size_t j = 0; j < 3; ++j) h[j] = (h[j] + v[j]) % G.orders[j];
          grew |= H.insert(h).second;
        }
    }
    auto p = present_subgroup(G.orders, span, n);
    std::uint64_t order = 1;
    for (long d : p.orders) order *= d;
    EXPECT_EQ(order, H.size());
    for (std::size_t t = 0; t < p.gens.size(); ++t) {
      EXPECT_TRUE(H.count(p.gens[t]));
      // generator t has exactly the stated order
      for (long k = 1; k <= p.orders[t]; ++k) {
        bool zero = true;
        for (std::size_t j = 0; j < 3; ++j) zero &= (k * p.gens[t][j]) % G.orders[j] == 0;
        EXPECT_EQ(zero, k == p.orders[t]);
      }
    }
  }
}

TEST(Coring, SweedlerCoringsPass) {
  for (long n : {2L, 4L, 6L}) {
    auto C = sweedler_coring(FiniteRing(n));
    auto r = check_coring(C);
    EXPECT_TRUE(r.passed) << n << ": " << r.counterexample;
    EXPECT_EQ(C.module.size(), static_cast<std::uint64_t>(n));
  }
  EXPECT_EQ(sweedler_coring(FiniteRing(2)).module.size(), 2u);
}

TEST(Coring, DirectSumsPass) {
  for (long n : {2L, 4L, 6L})
    for (std::size_t k = 1; k <= 3; ++k) {
      auto C = grouplike_coring(FiniteRing(n), k);
      EXPECT_TRUE(check_coring(C).passed);
      EXPECT_TRUE(C.same_tables(grouplike_by_hand(n, k)));
    }
}

TEST(Coring, SingletonSumIsUnchanged) {
  auto S = grouplike_by_hand(4, 2);
  EXPECT_TRUE(direct_sum_coring({S}).same_tables(S));
}

TEST(Coring, MixedBaseRingsRejected) {
  EXPECT_THROW(direct_sum_coring({sweedler_coring(FiniteRing(2)), sweedler_coring(FiniteRing(4))}), BaseRingMismatch);
}

TEST(Coring, CorruptedComultiplicationNamesTheLaw) {
  auto C = grouplike_coring(FiniteRing(2), 2);
  C.delta.m(1, 0) = 1;  // Δ(c0) = c0⊗c0 + c0⊗c1
  auto r = check_coring(C);
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.counterexample.find("coassociativity"), std::string::npos) << r.counterexample;
  auto D = sweedler_coring(FiniteRing(4));
  D.eps.m(0, 0) = 2;
  EXPECT_NE(check_coring(D).counterexample.find("counit"), std::string::npos);
}

TEST(Coring, RingProductUsesCrt) {
  EXPECT_EQ(FiniteRing::product({2, 3}).n, 6);
  EXPECT_THROW(FiniteRing::product({2, 4}), InvalidObject);
}

TEST(Comodule, TrivialCoactionOverSweedler) {
  std::mt19937_64 rng(5);
  for (long n : {2L, 4L, 6L}) {
    FiniteRing R(n);
    auto C = sweedler_coring(R);
    for (int trial = 0; trial < 10; ++trial) {
      auto M = random_module(rng, n, 3);
      EXPECT_TRUE(check_comodule(trivial_comodule(M, R), C).passed);
    }
  }
}

TEST(Comodule, CorruptedCoactionFails) {
  auto C = grouplike_coring(FiniteRing(2), 2);
  auto X = cofree(RModule{{2}}, C);
  X.rho.m(0, 1) = 1;
  EXPECT_FALSE(check_comodule(X, C).passed);
}

TEST(DualAlgebra, SweedlerIsTheRing) {
  auto C = sweedler_coring(FiniteRing(2));
  auto A = dual_algebra(C);
  auto el = A.elements();
  ASSERT_EQ(el.size(), 2u);
  // f ↦ f(1) identifies *C with Z/2; # is then multiplication
  for (const auto& f : el)
    for (const auto& g : el) EXPECT_EQ(A.product(f, g).at(0, 0), f.at(0, 0) * g.at(0, 0) % 2);
}

TEST(DualAlgebra, TwoCopiesMultiplyComponentwise) {
  auto C = grouplike_coring(FiniteRing(2), 2);
  auto A = dual_algebra(C);
  auto el = A.elements();
  ASSERT_EQ(el.size(), 4u);
  for (const auto& f : el)
    for (const auto& g : el) {
      auto fg = A.product(f, g);
      for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(fg.at(0, i), f.at(0, i) * g.at(0, i) % 2);
    }
  EXPECT_TRUE(check_dual_algebra(C).passed);
}

TEST(DualAlgebra, AssociativeOnEveryShippedCoring) {
  std::vector<Coring> corings;
  for (long n : {2L, 4L, 6L}) corings.push_back(sweedler_coring(FiniteRing(n)));
  for (long n : {2L, 4L})
    for (std::size_t k = 1; k <= 3; ++k) corings.push_back(grouplike_coring(FiniteRing(n), k));
  for (const auto& C : corings) {
    ASSERT_LE(dual_algebra(C).size(), 256u);
    auto r = check_dual_algebra(C);
    EXPECT_TRUE(r.passed) << r.counterexample;
    EXPECT_EQ(r.data["size"], dual_algebra(C).size());
  }
}

TEST(DualAlgebra, ComoduleBecomesModule) {
  std::mt19937_64 rng(9);
  for (long n : {2L, 4L}) {
    auto C = grouplike_coring(FiniteRing(n), 2);
    for (int trial = 0; trial < 5; ++trial) {
      auto X = cofree(random_module(rng, n, 2), C);
      auto r = check_dual_action(X, C);
      EXPECT_TRUE(r.passed) << r.counterexample;
    }
  }
}

TEST(DualAlgebra, BoundEnforced) {
  EXPECT_THROW(check_dual_algebra(grouplike_coring(FiniteRing(4), 5)), SearchBoundExceeded);
}

TEST(Frobenius, SweedlerOverZ2) {
  auto C = sweedler_coring(FiniteRing(2));
  auto s = frobenius_search(C);
  ASSERT_TRUE(s.system);
  EXPECT_EQ(s.system->e, std::vector<long>{1});
  EXPECT_EQ(s.system->pi.key(), std::vector<long>{1});  // π(r⊗s) = rs
  EXPECT_TRUE(check_frobenius(C, *s.system).passed);
}

TEST(Frobenius, SearchAgreesWithBruteForce) {
  // every π: C⊗C → C and every e for R^(2) over Z/2
  auto C = grouplike_coring(FiniteRing(2), 2);
  std::set<std::vector<long>> good_e;
  for (const auto& e : elements(C.module))
    for (const auto& entries : elements({std::vector<long>(8, 2)})) {
      FrobeniusSystem sys{e, LinearMap(tensor(C.module, C.module), C.module, 2)};
      sys.pi.m.a = entries;
      if (check_frobenius(C, sys).passed) good_e.insert(e);
    }
  EXPECT_EQ(good_e, (std::set<std::vector<long>>{{1, 1}}));
  auto s = frobenius_search(C);
  ASSERT_TRUE(s.system);
  EXPECT_EQ(s.system->e, (std::vector<long>{1, 1}));
  // π(c_i⊗c_j) = δ_ij c_i
  EXPECT_EQ(s.system->pi.key(), (std::vector<long>{1, 0, 0, 0, 0, 0, 0, 1}));
}

TEST(Frobenius, FoundForAllSmallGrouplikes) {
  for (long n : {2L, 4L})
    for (std::size_t k = 1; k <= 3; ++k) {
      auto C = grouplike_coring(FiniteRing(n), k);
      auto s = frobenius_search(C);
      ASSERT_TRUE(s.system) << "Z/" << n << " k=" << k;
      auto r = check_frobenius(C, *s.system);
      EXPECT_TRUE(r.passed) << r.counterexample;
      auto db = dual_basis(C);
      ASSERT_TRUE(db);
      EXPECT_TRUE(check_dual_basis(C, *db).passed);
    }
}

TEST(Frobenius, NotFoundCarriesCertificate) {
  // dual of k[x,y]/(x,y)^2 over Z/2: Δ1 = 1⊗1, Δx = 1⊗x + x⊗1, Δy = 1⊗y + y⊗1
  Coring C;
  C.ring = FiniteRing(2);
  C.module = {{2, 2, 2}};
  C.delta = LinearMap(C.module, tensor(C.module, C.module), 2);
  C.eps = LinearMap(C.module, C.base(), 2);
  C.eps.m(0, 0) = 1;
  C.delta.m(0, 0) = 1;
  for (std::size_t g : {1u, 2u}) {
    C.delta.m(0 * 3 + g, g) = 1;
    C.delta.m(g * 3 + 0, g) = 1;
  }
  ASSERT_TRUE(check_coring(C).passed);
  auto s = frobenius_search(C);
  EXPECT_FALSE(s.system);
  EXPECT_EQ(s.report.data["tried"], 8);
  EXPECT_EQ(s.report.data["unknowns"], 27);
  EXPECT_TRUE(s.report.data.contains("colinear_diagonal"));
}

TEST(Frobenius, CorruptedCoringRejectedUpstream) {
  auto C = sweedler_coring(FiniteRing(2));
  C.eps.m(0, 0) = 0;
  EXPECT_FALSE(check_coring(C).passed);
  EXPECT_THROW(frobenius_search(C), InvalidObject);
}

TEST(Frobenius, BoundEnforced) {
  EXPECT_THROW(frobenius_search(grouplike_coring(FiniteRing(4), 7), 4096), SearchBoundExceeded);
}

TEST(DualBasis, TorsionSummandsWhenProjective) {
  // Z/2 is projective over Z/6 but not over Z/4
  Coring C6 = sweedler_coring(FiniteRing(6));
  C6.module = {{2}};
  EXPECT_TRUE(dual_basis(C6));
  Coring C4 = sweedler_coring(FiniteRing(4));
  C4.module = {{2}};
  EXPECT_FALSE(dual_basis(C4));
}

TEST(Split, CoringItselfSplitsIntoSlots) {
  auto C = grouplike_coring(FiniteRing(2), 2);
  Comodule X{C.module, C.delta};
  ASSERT_TRUE(check_comodule(X, C).passed);
  auto s = split_comodule(X, C);
  EXPECT_TRUE(s.certificate.passed) << s.certificate.counterexample;
  ASSERT_EQ(s.parts.size(), 2u);
  for (const auto& p : s.parts) {
    EXPECT_EQ(p.module.orders, std::vector<long>{2});
    EXPECT_EQ(p.rho.key(), std::vector<long>{1});
  }
}

TEST(Split, SupportInOneSlot) {
  auto C = grouplike_coring(FiniteRing(4), 3);
  RModule M{{4, 2}};
  std::vector<Comodule> parts{trivial_comodule(M, FiniteRing(4)), trivial_comodule({}, FiniteRing(4)),
                              trivial_comodule({}, FiniteRing(4))};
  auto X = assemble_comodule(parts, C);
  auto s = split_comodule(X, C);
  EXPECT_TRUE(s.certificate.passed);
  EXPECT_TRUE(same_comodule(s.parts[0], parts[0]));
  EXPECT_EQ(s.parts[1].module.rank(), 0u);
  EXPECT_EQ(s.parts[2].module.rank(), 0u);
}

TEST(Split, RequiresDirectSum) {
  auto C = grouplike_by_hand(2, 2);
  EXPECT_THROW(split_comodule(Comodule{C.module, C.delta}, C), NotDirectSumCoring);
}

TEST(Split, NonCoordinateBasis) {
  // m1 = c1, m2 = c1 + c2 in the coring R^(2) over Z/2
  auto C = grouplike_coring(FiniteRing(2), 2);
  Comodule X{C.module, LinearMap(C.module, tensor(C.module, C.module), 2)};
  X.rho.m(0 * 2 + 0, 0) = 1;                                   // ρ(m1) = m1⊗c1
  X.rho.m(0 * 2 + 0, 1) = 1;                                   // ρ(m2) = m1⊗c1
  X.rho.m(1 * 2 + 1, 1) = 1, X.rho.m(0 * 2 + 1, 1) = 1;        //        + (m2 - m1)⊗c2
  ASSERT_TRUE(check_comodule(X, C).passed);
  auto s = split_comodule(X, C);
  EXPECT_TRUE(s.certificate.passed) << s.certificate.counterexample;
  for (const auto& p : s.parts) EXPECT_EQ(p.module.size(), 2u);
}

TEST(Assemble, TwoTrivialComodules) {
  FiniteRing R(4);
  auto C = grouplike_coring(R, 2);
  auto X = assemble_comodule({trivial_comodule({{4}}, R), trivial_comodule({{2}}, R)}, C);
  EXPECT_EQ(X.module.orders, (std::vector<long>{4, 2}));
  // slotwise: ρ(m0) = m0⊗c0, ρ(m1) = m1⊗c1
  EXPECT_EQ(X.rho.key(), (std::vector<long>{1, 0, 0, 0, 0, 0, 0, 1}));
  EXPECT_TRUE(check_comodule(X, C).passed);
}

TEST(Assemble, EmptyComponentsGiveZero) {
  FiniteRing R(2);
  auto C = grouplike_coring(R, 3);
  auto X = assemble_comodule({trivial_comodule({}, R), trivial_comodule({}, R), trivial_comodule({}, R)}, C);
  EXPECT_EQ(X.module.rank(), 0u);
  EXPECT_TRUE(check_comodule(X, C).passed);
}

TEST(Assemble, RoundtripOnSeededComodules) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    long n = trial % 2 ? 4 : 6;
    FiniteRing R(n);
    auto C = direct_sum_coring({sweedler_coring(R), grouplike_coring(R, 2), sweedler_coring(R)});
    std::vector<Comodule> parts;
    for (const auto& comp : C.components) parts.push_back(cofree(random_module(rng, n, 2), comp));
    auto X = assemble_comodule(parts, C);
    ASSERT_TRUE(check_comodule(X, C).passed);
    auto s = split_comodule(X, C);
    EXPECT_TRUE(s.certificate.passed) << s.certificate.counterexample;
    ASSERT_EQ(s.parts.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_TRUE(same_comodule(s.parts[k], parts[k])) << trial << "/" << k;
  }
}

TEST(Assemble, SplitAfterChangeOfBasis) {
  // conjugate an assembled comodule by a random automorphism, then split
  std::mt19937_64 rng(77);
  const long n = 4;
  FiniteRing R(n);
  auto C = grouplike_coring(R, 3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Comodule> parts;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      RModule M{std::vector<long>(rng() % 2 + 1, n)};
      rank += M.rank();
      parts.push_back(cofree(M, C.components[k]));
    }
    auto X = assemble_comodule(parts, C);
    ModMatrix P, Pinv;
    do {
      P = ModMatrix(rank, rank, n);
      for (auto& x : P.a) x = static_cast<long>(rng() % n);
      auto z = diagonalize(P);
      if (z.rank < rank) continue;
      bool units = true;
      for (long d : z.diagonal()) units &= std::gcd(d, n) == 1;
      if (!units) continue;
      // P⁻¹ = V D⁻¹ U
      ModMatrix Dinv(rank, rank, n);
      for (std::size_t i = 0; i < rank; ++i) Dinv(i, i) = inverse_mod(z.D(i, i), n);
      Pinv = z.V * Dinv * z.U;
      break;
    } while (true);
    ASSERT_EQ(P * Pinv, ModMatrix::identity(rank, n));
    auto idC = identity_map(C.module, n);
    Comodule Y{X.module, compose(tensor(LinearMap(X.module, X.module, Pinv), idC),
                                 compose(X.rho, LinearMap(X.module, X.module, P)))};
    ASSERT_TRUE(check_comodule(Y, C).passed);
    auto s = split_comodule(Y, C);
    EXPECT_TRUE(s.certificate.passed) << s.certificate.counterexample;
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(s.parts[k].module.size(), parts[k].module.size());
  }
}

TEST(Verdict, FiniteIndexSetsAreIso) {
  for (std::size_t k = 1; k <= 3; ++k) {
    auto v = product_coproduct_verdict(FiniteRing(2), k);
    EXPECT_EQ(v.result, "ISO") << k << ": " << v.report.counterexample;
    EXPECT_TRUE(v.evidence.contains("pi"));
    EXPECT_TRUE(v.evidence["dual_basis"].get<bool>());
  }
  EXPECT_EQ(product_coproduct_verdict(FiniteRing(4), 2).result, "ISO");
}

TEST(Verdict, InfiniteIndexSetIsNotIso) {
  auto v = product_coproduct_verdict(FiniteRing(2), std::nullopt);
  EXPECT_EQ(v.result, "NOT-ISO");
  EXPECT_EQ(v.mode, "symbolic");
  EXPECT_TRUE(v.to_json().contains("trace"));
  EXPECT_GE(v.evidence.size(), 4u);
}

TEST(Fixture, JsonRoundtrip) {
  for (const auto& C : {sweedler_coring(FiniteRing(6)), grouplike_coring(FiniteRing(4), 3)}) {
    auto back = coring_from_json(to_json(C));
    EXPECT_TRUE(back.same_tables(C));
    EXPECT_EQ(back.is_direct_sum(), C.is_direct_sum());
  }
  EXPECT_THROW(coring_from_json(json{{"ring", 2}}), FixtureError);
  EXPECT_THROW(coring_from_json(json{{"ring", 2}, {"module", {2}}, {"delta", {{1, 0}}}, {"counit", {{1}}}}),
               FixtureError);
}
