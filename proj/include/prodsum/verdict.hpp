#pragma once

// Finite versus infinite index sets: a finite family has an invertible
// canonical map ⊕ → ∏ in any shipped model; for a countable family the
// answer depends on whether the hom monoids have nonzero invertible elements.

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "prodsum/biproduct.hpp"
#include "prodsum/finab.hpp"
#include "prodsum/lattice_product.hpp"
#include "prodsum/swindle.hpp"

namespace prodsum {

template <CategoryModel M>
struct FamilySpec {
  bool symbolic = false;                      // countably infinite index set
  std::vector<typename M::Object> family;     // finite family
  std::optional<typename M::Object> base;     // repeated object for the symbolic case

  static FamilySpec finite(std::vector<typename M::Object> f) { return {false, std::move(f), std::nullopt}; }
  static FamilySpec countable(typename M::Object a) { return {true, {}, std::move(a)}; }
};

template <CategoryModel M>
Verdict finiteness_verdict(const M& m, const FamilySpec<M>& spec, const ChaseOptions& opt = {}) {
  constexpr bool finab = std::is_same_v<M, FinAbModel>;
  constexpr bool lattice = std::is_same_v<M, LatticeModel>;
  if constexpr (!finab && !lattice) {
    throw ModelUnsupported(std::string(m.name()) + ": no finiteness verdict for this model");
  } else {
    Verdict v;
    v.report.name = "finiteness_verdict";
    if (!spec.symbolic) {
      v.mode = "finite";
      v.report.mode = "exhaustive";
      auto c = canonical_morphism(m, spec.family);
      // independent check of both composites
      bool left = m.equal(m.compose(c.inverse, c.forward), m.identity(c.sum.object));
      bool right = m.equal(m.compose(c.forward, c.inverse), m.identity(c.sum.object));
      v.report.checks = 2;
      v.result = left && right ? "ISO" : "NOT-ISO";
      if (v.result != "ISO") v.report.fail("canonical map has no two-sided inverse");
      json fam = json::array();
      for (const auto& x : spec.family) fam.push_back(m.describe(x));
      v.evidence = {{"family", fam},
                    {"forward", m.describe(c.forward)},
                    {"inverse", m.describe(c.inverse)},
                    {"inverse_left", left},
                    {"inverse_right", right}};
      return v;
    }
    v.mode = "symbolic";
    v.report.mode = "symbolic";
    if (!spec.base) throw ShapeMismatch("symbolic family needs a base object");
    const auto& A = *spec.base;
    // nonzero endomorphisms of A with an additive inverse
    std::optional<typename M::Morphism> f, fneg;
    for (const auto& e : m.hom(A, A)) {
      if (m.equal(e, m.zero(A, A))) continue;
      if (auto n = find_negative(m, e)) {
        f = e;
        fneg = *n;
        break;
      }
    }
    if (f) {
      Hypothesis h;
      h.invertible_f = Hypothesis::InvertibleF{"A", true};
      auto P = build_swindle_presentation(h);
      auto iv = no_invertible_verdict(P, opt);
      v.report.absorb(iv.report);
      v.result = iv.result == "CONTRADICTION" ? "NOT-ISO" : "UNDECIDED";
      v.evidence = {{"f", m.describe(*f)},
                    {"f_neg", m.describe(*fneg)},
                    {"derived", iv.result},
                    {"chains", iv.report.data["trace"]}};
      if (v.result != "NOT-ISO") v.report.fail("contradiction not derived");
      return v;
    }
    if constexpr (lattice) {
      // no nonzero invertible element: exhibit the indexed biproduct at growing sizes
      json sizes = json::array();
      for (std::size_t n : {6u, 50u, 1000u}) {
        auto b = lattice_indexed_biproduct({A}, n);
        auto r = verify_universal_properties(b);
        v.report.absorb(r);
        sizes.push_back({{"n", n}, {"mode", r.mode}, {"passed", r.passed}});
      }
      v.result = v.report.passed ? "ISO-CONSISTENT" : "UNDECIDED";
      v.evidence = {{"base", m.describe(A)},
                    {"invertible_endomorphisms", "only 0"},
                    {"witness", "sigma_i / p_i on the componentwise-join product"},
                    {"sizes", sizes}};
      return v;
    } else {
      // the zero group: the canonical map is trivially invertible
      v.result = "ISO-CONSISTENT";
      v.evidence = {{"base", m.describe(A)}, {"invertible_endomorphisms", "only 0"}};
      return v;
    }
  }
}

}  // namespace prodsum
