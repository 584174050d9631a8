#pragma once

// Finite biproducts built from a model's binary universal properties, the
// canonical map from the coproduct to the product, its component matrix,
// and the checks that reduce a natural isomorphism to the canonical one.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "prodsum/model.hpp"

namespace prodsum {

template <CategoryModel M>
struct Biproduct {
  using Object = typename M::Object;
  using Morphism = typename M::Morphism;

  std::vector<Object> summands;
  Object object;
  std::vector<Morphism> injections;   // σ_k : A_k -> object
  std::vector<Morphism> projections;  // p_k : object -> A_k
  // levels[k] joins the first k+1 summands with summand k+1 (left nesting)
  std::vector<BinarySum<Object, Morphism>> levels;

  std::size_t size() const { return summands.size(); }
};

/// Checks p_l σ_k = δ_{k,l} and Σ_k σ_k p_k = 1 exactly in the model.
template <CategoryModel M>
Report verify_biproduct(const M& m, const Biproduct<M>& b) {
  Report r;
  r.name = "biproduct relations";
  r.mode = "exact";
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      ++r.checks;
      auto lhs = m.compose(b.projections[l], b.injections[k]);
      auto rhs = k == l ? m.identity(b.summands[k]) : m.zero(b.summands[k], b.summands[l]);
      if (!m.equal(lhs, rhs))
        r.fail("p" + std::to_string(l) + " o s" + std::to_string(k) + " = " + m.describe(lhs));
    }
  if (n > 0) {
    ++r.checks;
    auto total = m.zero(b.object, b.object);
    for (std::size_t k = 0; k < n; ++k)
      total = m.add(total, m.compose(b.injections[k], b.projections[k]));
    if (!m.equal(total, m.identity(b.object)))
      r.fail("sum of s_k o p_k is " + m.describe(total) + ", not the identity");
  }
  return r;
}

/// n-ary biproduct by left-nested iteration of the binary construction. The
/// empty family yields the zero object.
template <CategoryModel M>
Biproduct<M> build_biproduct(const M& m, const std::vector<typename M::Object>& family) {
  Biproduct<M> b;
  b.summands = family;
  if (family.empty()) {
    b.object = m.zero_object();
    return b;
  }
  b.object = family[0];
  b.injections.push_back(m.identity(family[0]));
  b.projections.push_back(m.identity(family[0]));
  for (std::size_t k = 1; k < family.size(); ++k) {
    auto s = m.sum2(b.object, family[k]);
    for (auto& inj : b.injections) inj = m.compose(s.i, inj);
    for (auto& pr : b.projections) pr = m.compose(pr, s.p);
    b.injections.push_back(s.j);
    b.projections.push_back(s.q);
    b.object = s.object;
    b.levels.push_back(std::move(s));
  }
  if (auto rep = verify_biproduct(m, b); !rep.passed)
    throw ModelUnsupported(std::string(m.name()) + " biproduct failed: " + rep.counterexample);
  return b;
}

template <CategoryModel M>
Biproduct<M> build_biproduct(const M& m, const typename M::Object& x, const typename M::Object& y) {
  return build_biproduct(m, std::vector<typename M::Object>{x, y});
}

/// Induced map W -> ⊕A_k from components f_k : W -> A_k (product side).
template <CategoryModel M>
typename M::Morphism tuple(const M& m, const Biproduct<M>& b,
                           const std::vector<typename M::Morphism>& fs) {
  if (fs.size() != b.size()) throw ShapeMismatch("tuple: component count differs from family size");
  if (fs.empty()) throw ShapeMismatch("tuple into the empty family needs a domain");
  auto t = fs[0];
  for (std::size_t k = 1; k < fs.size(); ++k) t = m.tuple2(t, fs[k], b.levels[k - 1]);
  return t;
}

/// Induced map ⊕A_k -> W from components f_k : A_k -> W (coproduct side).
template <CategoryModel M>
typename M::Morphism cotuple(const M& m, const Biproduct<M>& b,
                             const std::vector<typename M::Morphism>& fs) {
  if (fs.size() != b.size()) throw ShapeMismatch("cotuple: component count differs from family size");
  if (fs.empty()) throw ShapeMismatch("cotuple out of the empty family needs a codomain");
  auto t = fs[0];
  for (std::size_t k = 1; k < fs.size(); ++k) t = m.cotuple2(t, fs[k], b.levels[k - 1]);
  return t;
}

/// ⊕f_k : ⊕A_k -> ⊕B_k
template <CategoryModel M>
typename M::Morphism direct_sum_map(const M& m, const Biproduct<M>& a, const Biproduct<M>& b,
                                    const std::vector<typename M::Morphism>& fs) {
  std::vector<typename M::Morphism> comps;
  for (std::size_t k = 0; k < fs.size(); ++k) comps.push_back(m.compose(b.injections[k], fs[k]));
  return cotuple(m, a, comps);
}

/// ε∘(f×g)∘η with η, ε and f×g taken from the universal properties of A⊕A and
/// B⊕B, never from the hom-monoid addition.
template <CategoryModel M>
typename M::Morphism sum_via_biproduct(const M& m, const typename M::Morphism& f,
                                       const typename M::Morphism& g) {
  if (!m.same_object(m.dom(f), m.dom(g)) || !m.same_object(m.cod(f), m.cod(g)))
    throw ParallelismViolation("sum_via_biproduct: f and g are not parallel");
  auto a = m.dom(f);
  auto bo = m.cod(f);
  auto aa = build_biproduct(m, a, a);
  auto bb = build_biproduct(m, bo, bo);
  auto eta = tuple(m, aa, {m.identity(a), m.identity(a)});
  auto eps = cotuple(m, bb, {m.identity(bo), m.identity(bo)});
  auto fxg = tuple(m, bb, {m.compose(f, aa.projections[0]), m.compose(g, aa.projections[1])});
  return m.compose(eps, m.compose(fxg, eta));
}

/// ε(i f p)η + ε(j g q)η = ε(f×g)η, checked in the model.
template <CategoryModel M>
bool intro_sum_identity_holds(const M& m, const typename M::Morphism& f,
                              const typename M::Morphism& g) {
  auto a = m.dom(f);
  auto bo = m.cod(f);
  auto aa = build_biproduct(m, a, a);
  auto bb = build_biproduct(m, bo, bo);
  auto eta = tuple(m, aa, {m.identity(a), m.identity(a)});
  auto eps = cotuple(m, bb, {m.identity(bo), m.identity(bo)});
  auto ifp = m.compose(bb.injections[0], m.compose(f, aa.projections[0]));
  auto jgq = m.compose(bb.injections[1], m.compose(g, aa.projections[1]));
  auto lhs = m.add(m.compose(eps, m.compose(ifp, eta)), m.compose(eps, m.compose(jgq, eta)));
  return m.equal(lhs, sum_via_biproduct(m, f, g));
}

/// Θ^{k,l} = p_l Θ σ_k for every pair of slots.
template <CategoryModel M>
struct ThetaMatrix {
  std::vector<std::vector<typename M::Morphism>> entries;  // entries[k][l]

  const typename M::Morphism& at(std::size_t k, std::size_t l) const { return entries[k][l]; }
  std::size_t size() const { return entries.size(); }
};

template <CategoryModel M>
ThetaMatrix<M> theta_components(const M& m, const typename M::Morphism& theta, const Biproduct<M>& b) {
  if (!m.same_object(m.dom(theta), b.object) || !m.same_object(m.cod(theta), b.object))
    throw ShapeMismatch("theta_components: morphism is not an endomorphism of the family's sum");
  ThetaMatrix<M> t;
  t.entries.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k)
    for (std::size_t l = 0; l < b.size(); ++l)
      t.entries[k].push_back(m.compose(b.projections[l], m.compose(theta, b.injections[k])));
  return t;
}

/// True iff the matrix is δ_{k,l}·id entrywise.
template <CategoryModel M>
bool is_delta_identity(const M& m, const ThetaMatrix<M>& t, const Biproduct<M>& b) {
  for (std::size_t k = 0; k < t.size(); ++k)
    for (std::size_t l = 0; l < t.size(); ++l) {
      auto want = k == l ? m.identity(b.summands[k]) : m.zero(b.summands[k], b.summands[l]);
      if (!m.equal(t.at(k, l), want)) return false;
    }
  return true;
}

template <CategoryModel M>
struct CanonicalMap {
  Biproduct<M> sum;
  typename M::Morphism forward;  // F : ⊕A -> ∏A
  typename M::Morphism inverse;  // G : ∏A -> ⊕A
  ThetaMatrix<M> theta;
  bool invertible = false;
};

/// F with F^{k,l} = δ_{k,l}; the inverse candidate is built the same way in
/// the other direction and both composites are compared with identities.
template <CategoryModel M>
CanonicalMap<M> canonical_morphism(const M& m, const std::vector<typename M::Object>& family) {
  CanonicalMap<M> c;
  c.sum = build_biproduct(m, family);
  const auto& b = c.sum;
  if (family.empty()) {
    c.forward = c.inverse = m.identity(b.object);
    c.invertible = true;
    return c;
  }
  std::vector<typename M::Morphism> rows;
  for (std::size_t l = 0; l < b.size(); ++l) {
    std::vector<typename M::Morphism> comps;
    for (std::size_t k = 0; k < b.size(); ++k)
      comps.push_back(k == l ? m.identity(family[k]) : m.zero(family[k], family[l]));
    rows.push_back(cotuple(m, b, comps));
  }
  c.forward = tuple(m, b, rows);
  c.inverse = tuple(m, b, rows);
  c.theta = theta_components(m, c.forward, b);
  c.invertible = m.equal(m.compose(c.inverse, c.forward), m.identity(b.object)) &&
                 m.equal(m.compose(c.forward, c.inverse), m.identity(b.object));
  return c;
}

/// Γ_k(X): X in slot k, the zero object elsewhere.
template <CategoryModel M>
std::vector<typename M::Object> gamma_family(const M& m, const typename M::Object& x, std::size_t k,
                                             std::size_t n) {
  std::vector<typename M::Object> fam(n, m.zero_object());
  fam.at(k) = x;
  return fam;
}

/// Unit σ of (⊕, Δ) and counit p of (Δ, ∏) on a family, with their
/// naturality squares checked against component maps into a second family.
template <CategoryModel M>
struct DiagonalAdjunction {
  Biproduct<M> family;

  Report check_naturality(const M& m, const Biproduct<M>& target,
                          const std::vector<typename M::Morphism>& fs) const {
    Report r;
    r.name = "diagonal adjunction naturality";
    auto sum_f = direct_sum_map(m, family, target, fs);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      r.checks += 2;
      if (!m.equal(m.compose(sum_f, family.injections[k]), m.compose(target.injections[k], fs[k])))
        r.fail("unit square fails in slot " + std::to_string(k));
      if (!m.equal(m.compose(target.projections[k], sum_f), m.compose(fs[k], family.projections[k])))
        r.fail("counit square fails in slot " + std::to_string(k));
    }
    return r;
  }
};

/// A transformation ⊕ -> ∏ given by its component on each family's sum.
template <CategoryModel M>
using ThetaComponent = std::function<typename M::Morphism(const Biproduct<M>&)>;

template <CategoryModel M>
struct Gen1Data {
  Report report;
  // lambda[k][x] = Λ^k on objects[x]
  std::vector<std::vector<typename M::Morphism>> lambda;
};

/// Checks (i) off-diagonal vanishing, (ii) diagonal entries equal to the
/// Γ_k-determined Λ^k, (iii) naturality f Λ^k_X = Λ^k_Y f, over the sample
/// families and every morphism between sample objects (hom-sets beyond 64
/// elements are sampled with `seed`).
template <CategoryModel M>
Gen1Data<M> verify_gen1(const M& m, const ThetaComponent<M>& theta,
                        const std::vector<std::vector<typename M::Object>>& families,
                        const std::vector<typename M::Object>& objects, std::size_t n,
                        std::uint64_t seed = 0x5eed) {
  Gen1Data<M> out;
  Report& r = out.report;
  r.name = "gen1 conditions";
  auto find_obj = [&](const typename M::Object& x) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (m.same_object(objects[i], x)) return i;
    return std::nullopt;
  };
  out.lambda.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& x : objects) {
      auto b = build_biproduct(m, gamma_family(m, x, k, n));
      auto th = theta_components(m, theta(b), b);
      out.lambda[k].push_back(th.at(k, k));
    }
  for (const auto& fam : families) {
    if (fam.size() != n) throw ShapeMismatch("sample family has the wrong size");
    auto b = build_biproduct(m, fam);
    auto th = theta_components(m, theta(b), b);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        ++r.checks;
        if (k != l) {
          if (!m.equal(th.at(k, l), m.zero(fam[k], fam[l])))
            r.fail("(i) Theta^{" + std::to_string(k) + "," + std::to_string(l) + "} = " +
                   m.describe(th.at(k, l)) + " on family slot " + m.describe(fam[k]));
          continue;
        }
        auto xi = find_obj(fam[k]);
        if (!xi) throw ShapeMismatch("family member " + m.describe(fam[k]) + " not among sample objects");
        if (!m.equal(th.at(k, k), out.lambda[k][*xi]))
          r.fail("(ii) Theta^{" + std::to_string(k) + "," + std::to_string(k) + "} = " +
                 m.describe(th.at(k, k)) + " differs from Lambda^" + std::to_string(k) + " = " +
                 m.describe(out.lambda[k][*xi]));
      }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t xi = 0; xi < objects.size(); ++xi)
      for (std::size_t yi = 0; yi < objects.size(); ++yi) {
        auto homs = m.hom(objects[xi], objects[yi]);
        std::vector<std::size_t> picks;
        if (homs.size() <= 64) {
          for (std::size_t i = 0; i < homs.size(); ++i) picks.push_back(i);
        } else {
          for (int s = 0; s < 64; ++s) picks.push_back(rng() % homs.size());
        }
        for (auto i : picks) {
          ++r.checks;
          const auto& f = homs[i];
          if (!m.equal(m.compose(f, out.lambda[k][xi]), m.compose(out.lambda[k][yi], f)))
            r.fail("(iii) naturality of Lambda^" + std::to_string(k) + " fails for f=" +
                   m.describe(f) + " : " + m.describe(objects[xi]) + " -> " +
                   m.describe(objects[yi]));
        }
      }
  r.mode = "sampled families + all Gamma_k";
  return out;
}

template <CategoryModel M>
struct Reduction {
  typename M::Morphism correction;  // L_A = ⊕ (Λ^k_{A_k})^{-1}
  typename M::Morphism composite;   // Θ_A ∘ L_A
  bool equals_canonical = false;
};

/// For each sample family builds L_A from inverses of the Λ^k and certifies
/// Θ_A ∘ L_A = F_A; naturality of L is checked between consecutive families.
/// Throws NotInvertible when some Λ^k_X has no inverse in End(X).
template <CategoryModel M>
std::vector<Reduction<M>> reduce_to_canonical(const M& m, const ThetaComponent<M>& theta,
                                              const std::vector<std::vector<typename M::Object>>& families,
                                              Report* naturality = nullptr,
                                              std::uint64_t seed = 0x5eed) {
  std::vector<Reduction<M>> out;
  std::vector<Biproduct<M>> sums;
  std::vector<std::vector<typename M::Morphism>> inverses;
  for (const auto& fam : families) {
    auto b = build_biproduct(m, fam);
    std::vector<typename M::Morphism> invs;
    for (std::size_t k = 0; k < fam.size(); ++k) {
      auto g = build_biproduct(m, gamma_family(m, fam[k], k, fam.size()));
      auto lam = theta_components(m, theta(g), g).at(k, k);
      auto inv = find_inverse(m, lam);
      if (!inv)
        throw NotInvertible("Lambda^" + std::to_string(k) + " on " + m.describe(fam[k]) + " = " +
                            m.describe(lam) + " has no inverse");
      invs.push_back(*inv);
    }
    Reduction<M> red;
    red.correction = direct_sum_map(m, b, b, invs);
    red.composite = m.compose(theta(b), red.correction);
    red.equals_canonical = m.equal(red.composite, canonical_morphism(m, fam).forward);
    out.push_back(std::move(red));
    sums.push_back(std::move(b));
    inverses.push_back(std::move(invs));
  }
  if (naturality) {
    naturality->name = "naturality of L";
    std::mt19937_64 rng(seed);
    for (std::size_t a = 0; a + 1 < families.size(); ++a) {
      const auto& fa = families[a];
      const auto& fb = families[a + 1];
      if (fa.size() != fb.size()) continue;
      for (int s = 0; s < 16; ++s) {
        std::vector<typename M::Morphism> fs;
        for (std::size_t k = 0; k < fa.size(); ++k) {
          auto homs = m.hom(fa[k], fb[k]);
          fs.push_back(homs[rng() % homs.size()]);
        }
        auto sum_f = direct_sum_map(m, sums[a], sums[a + 1], fs);
        ++naturality->checks;
        if (!m.equal(m.compose(sum_f, out[a].correction), m.compose(out[a + 1].correction, sum_f)))
          naturality->fail("L not natural between families " + std::to_string(a) + " and " +
                           std::to_string(a + 1));
      }
    }
  }
  return out;
}

}  // namespace prodsum
