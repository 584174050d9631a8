#pragma once

// Indexed biproducts of join semilattices with lazily represented carriers:
// an element is a vector holding one coordinate per summand.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "prodsum/lattice.hpp"

namespace prodsum {

class LatticeIndexedBiproduct {
 public:
  using Elem = std::vector<int>;

  LatticeIndexedBiproduct(std::vector<LatticeObject> parts) : parts_(std::move(parts)) {
    for (const auto& p : parts_) {
      auto it = std::find(distinct_.begin(), distinct_.end(), p);
      slot_kind_.push_back(static_cast<std::size_t>(it - distinct_.begin()));
      if (it == distinct_.end()) distinct_.push_back(p);
    }
  }

  std::size_t size() const { return parts_.size(); }
  const LatticeObject& part(std::size_t i) const { return parts_.at(i); }
  const std::vector<LatticeObject>& parts() const { return parts_; }

  /// Carrier size, or 0 when it exceeds `cap`.
  std::size_t carrier_size(std::size_t cap = std::size_t{1} << 40) const {
    std::size_t s = 1;
    for (const auto& p : parts_) {
      if (s > cap / p.size()) return 0;
      s *= p.size();
    }
    return s;
  }

  Elem bottom() const { return Elem(parts_.size(), 0); }

  Elem join(const Elem& a, const Elem& b) const {
    Elem out(parts_.size());
    for (std::size_t i = 0; i < parts_.size(); ++i) out[i] = parts_[i].join(a[i], b[i]);
    return out;
  }

  Elem join_all(const std::vector<Elem>& family) const {
    Elem acc = bottom();
    for (const auto& e : family) acc = join(acc, e);
    return acc;
  }

  /// σ_i(x) = (δ_{i,k} x)_k
  Elem sigma(std::size_t i, int x) const {
    Elem out = bottom();
    out.at(i) = x;
    return out;
  }

  int project(std::size_t i, const Elem& z) const { return z.at(i); }

  /// Flat index in LatticeObject::product(parts) (first part least significant).
  std::size_t encode(const Elem& z) const {
    std::size_t idx = 0, radix = 1;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      idx += radix * static_cast<std::size_t>(z[i]);
      radix *= parts_[i].size();
    }
    return idx;
  }

  Elem decode(std::size_t idx) const {
    Elem z(parts_.size());
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      z[i] = static_cast<int>(idx % parts_[i].size());
      idx /= parts_[i].size();
    }
    return z;
  }

  Elem random_elem(std::mt19937_64& rng) const {
    Elem z(parts_.size());
    for (std::size_t i = 0; i < parts_.size(); ++i) z[i] = static_cast<int>(rng() % parts_[i].size());
    return z;
  }

  /// Index into the list of distinct summands, so uniform families share hom tables.
  std::size_t kind(std::size_t i) const { return slot_kind_[i]; }
  const std::vector<LatticeObject>& distinct_parts() const { return distinct_; }

 private:
  std::vector<LatticeObject> parts_;
  std::vector<LatticeObject> distinct_;
  std::vector<std::size_t> slot_kind_;
};

/// `objects` either has n entries or a single entry repeated n times.
inline LatticeIndexedBiproduct lattice_indexed_biproduct(const std::vector<LatticeObject>& objects,
                                                         std::size_t n) {
  if (objects.size() == n) return LatticeIndexedBiproduct(objects);
  if (objects.size() == 1) return LatticeIndexedBiproduct(std::vector<LatticeObject>(n, objects[0]));
  throw ShapeMismatch("lattice_indexed_biproduct: " + std::to_string(objects.size()) +
                      " objects for an index set of size " + std::to_string(n));
}

struct UniversalCheckOptions {
  std::uint64_t seed = 0x5eed;
  std::size_t cones = 24;         // sampled cones and cocones per test object
  std::size_t pairs = 256;        // sampled element pairs per join check
  std::size_t exhaustive_carrier = 64;
};

/// Checks that σ_i, p_i are morphisms and that the carrier is both a product
/// (cones Y -> X_i) and a coproduct (cocones X_i -> Y) for several test
/// objects Y. Uniqueness of the mediating map is decided by enumerating
/// Hom(Y, ⊕) / Hom(⊕, Y) when the carrier is small, and otherwise follows from
/// the certified identity ⊥_i σ_i p_i = 1 on the sampled elements.
inline Report verify_universal_properties(const LatticeIndexedBiproduct& b,
                                          const UniversalCheckOptions& opt = {}) {
  using Elem = LatticeIndexedBiproduct::Elem;
  Report r;
  r.name = "indexed biproduct (n=" + std::to_string(b.size()) + ")";
  LatticeModel model;
  std::mt19937_64 rng(opt.seed);
  const std::size_t n = b.size();
  const std::size_t carrier = b.carrier_size(opt.exhaustive_carrier);
  const bool exhaustive = carrier != 0 && carrier <= opt.exhaustive_carrier;
  r.mode = exhaustive ? "exhaustive" : "sampled";
  r.data["carrier"] = exhaustive ? json(carrier) : json("> " + std::to_string(opt.exhaustive_carrier));

  std::vector<Elem> sample;
  if (exhaustive) {
    for (std::size_t k = 0; k < carrier; ++k) sample.push_back(b.decode(k));
  } else {
    sample.push_back(b.bottom());
    for (std::size_t k = 0; k < opt.pairs; ++k) sample.push_back(b.random_elem(rng));
  }
  auto for_pairs = [&](auto&& fn) {
    if (exhaustive) {
      for (const auto& x : sample)
        for (const auto& y : sample) fn(x, y);
    } else {
      for (std::size_t k = 0; k < opt.pairs; ++k)
        fn(sample[rng() % sample.size()], sample[rng() % sample.size()]);
    }
  };

  // (i) σ_i and p_i are morphisms.
  for (std::size_t i = 0; i < n; ++i) {
    const auto& xi = b.part(i);
    ++r.checks;
    if (b.sigma(i, 0) != b.bottom()) r.fail("sigma_" + std::to_string(i) + "(0) != 0");
    for (int x = 0; x < static_cast<int>(xi.size()); ++x)
      for (int y = 0; y < static_cast<int>(xi.size()); ++y) {
        ++r.checks;
        if (b.sigma(i, xi.join(x, y)) != b.join(b.sigma(i, x), b.sigma(i, y)))
          r.fail("sigma_" + std::to_string(i) + " does not preserve " + std::to_string(x) + " v " +
                 std::to_string(y));
      }
  }
  for_pairs([&](const Elem& x, const Elem& y) {
    auto j = b.join(x, y);
    for (std::size_t i = 0; i < n; ++i) {
      ++r.checks;
      if (b.project(i, j) != b.part(i).join(b.project(i, x), b.project(i, y)))
        r.fail("p_" + std::to_string(i) + " does not preserve a join");
    }
  });
  // ⊥_i σ_i p_i = 1
  for (const auto& z : sample) {
    ++r.checks;
    Elem acc = b.bottom();
    for (std::size_t i = 0; i < n; ++i) acc = b.join(acc, b.sigma(i, b.project(i, z)));
    if (acc != z) r.fail("join of sigma_i p_i is not the identity");
  }
  if (!r.passed) return r;

  std::vector<LatticeObject> tests = {LatticeObject::chain(2), LatticeObject::chain(3),
                                      LatticeObject::powerset(2)};
  std::optional<LatticeObject> flat;
  if (exhaustive) flat = LatticeObject::product(b.parts());

  for (const auto& y : tests) {
    std::vector<std::vector<LatticeMorphism>> into(b.distinct_parts().size()), out_of(into.size());
    for (std::size_t d = 0; d < into.size(); ++d) {
      into[d] = model.hom(y, b.distinct_parts()[d]);
      out_of[d] = model.hom(b.distinct_parts()[d], y);
    }
    std::vector<LatticeMorphism> all_into, all_out_of;
    if (flat) {
      all_into = model.hom(y, *flat);
      all_out_of = model.hom(*flat, y);
    }
    for (std::size_t c = 0; c < opt.cones; ++c) {
      // product side: a cone f_i : Y -> X_i
      std::vector<const LatticeMorphism*> f(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& hs = into[b.kind(i)];
        f[i] = &hs[rng() % hs.size()];
      }
      auto mediate = [&](int w) {
        Elem z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = (*f[i])(w);
        return z;
      };
      const int ny = static_cast<int>(y.size());
      for (int w = 0; w < ny; ++w)
        for (int v = 0; v < ny; ++v) {
          ++r.checks;
          if (mediate(y.join(w, v)) != b.join(mediate(w), mediate(v)))
            r.fail("tuple of a cone out of " + y.describe() + " is not a morphism");
        }
      if (flat) {
        std::size_t count = 0;
        for (const auto& h : all_into) {
          bool ok = true;
          for (int w = 0; w < ny && ok; ++w) {
            auto z = b.decode(static_cast<std::size_t>(h(w)));
            for (std::size_t i = 0; i < n && ok; ++i) ok = z[i] == (*f[i])(w);
          }
          count += ok;
        }
        ++r.checks;
        if (count != 1)
          r.fail("cone out of " + y.describe() + " has " + std::to_string(count) + " mediating maps");
      }

      // coproduct side: a cocone g_i : X_i -> Y
      std::vector<const LatticeMorphism*> g(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& hs = out_of[b.kind(i)];
        g[i] = &hs[rng() % hs.size()];
      }
      auto comediate = [&](const Elem& z) {
        int acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc = y.join(acc, (*g[i])(z[i]));
        return acc;
      };
      for (std::size_t i = 0; i < n; ++i)
        for (int x = 0; x < static_cast<int>(b.part(i).size()); ++x) {
          ++r.checks;
          if (comediate(b.sigma(i, x)) != (*g[i])(x))
            r.fail("cotuple does not restrict to g_" + std::to_string(i));
        }
      for_pairs([&](const Elem& x, const Elem& z) {
        ++r.checks;
        if (comediate(b.join(x, z)) != y.join(comediate(x), comediate(z)))
          r.fail("cotuple of a cocone into " + y.describe() + " is not a morphism");
      });
      if (flat) {
        std::size_t count = 0;
        for (const auto& h : all_out_of) {
          bool ok = true;
          for (std::size_t i = 0; i < n && ok; ++i)
            for (int x = 0; x < static_cast<int>(b.part(i).size()) && ok; ++x)
              ok = h(static_cast<int>(b.encode(b.sigma(i, x)))) == (*g[i])(x);
          count += ok;
        }
        ++r.checks;
        if (count != 1)
          r.fail("cocone into " + y.describe() + " has " + std::to_string(count) + " mediating maps");
      }
      if (!r.passed) return r;
    }
  }
  if (!flat) r.notes.push_back("uniqueness from the certified identity join_i sigma_i p_i = 1");
  return r;
}

/// Builds the completed family (M_i) together with M_* = (⊕M_i)^(N) × (∏M_i)^N
/// for each surrogate size N and checks that the canonical map from the
/// coproduct of the completed family to its product is a bijection with an
/// explicit inverse. Only the lattice model is supported.
template <class Model>
Report completed_family_demo(const Model& model, const std::vector<typename Model::Object>& base,
                             const std::vector<int>& sizes = {2, 4, 8}, std::uint64_t seed = 0x5eed) {
  if constexpr (!std::is_same_v<Model, LatticeModel>) {
    (void)base, (void)sizes, (void)seed;
    throw ModelUnsupported(std::string(model.name()) +
                           ": the completed family needs infinitely indexed sums; only the lattice "
                           "model realises it at finite surrogate sizes");
  } else {
    (void)model;
    Report r;
    r.name = "completed family";
    json runs = json::array();
    bool any_sampled = false;
    for (int big_n : sizes) {
      std::vector<LatticeObject> parts = base;
      // M_* is 2N copies of the n-fold biproduct: N for the coproduct power, N for the product power.
      for (int c = 0; c < 2 * big_n; ++c) parts.insert(parts.end(), base.begin(), base.end());
      LatticeIndexedBiproduct fam(parts);
      const std::size_t slots = base.size();
      const std::size_t carrier = fam.carrier_size(4096);
      const bool exhaustive = carrier != 0;
      any_sampled |= !exhaustive;
      // Slot 0..n-1 are the M_i; the remaining coordinates form M_*. The
      // canonical map has component δ_{k,l} from slot k to slot l, so its l-th
      // coordinate is the join over k of δ_{k,l} applied to the k-th coordinate.
      auto canonical = [&](const LatticeIndexedBiproduct::Elem& z) {
        LatticeIndexedBiproduct::Elem out(z.size());
        for (std::size_t l = 0; l < z.size(); ++l) {
          int acc = 0;
          for (std::size_t k = 0; k < z.size(); ++k) acc = fam.part(l).join(acc, k == l ? z[k] : 0);
          out[l] = acc;
        }
        return out;
      };
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(big_n));
      std::size_t checked = 0;
      bool ok = true;
      auto check = [&](const LatticeIndexedBiproduct::Elem& z) {
        ++checked;
        auto fz = canonical(z);
        if (canonical(fz) != z || fz != z) ok = false;
      };
      if (exhaustive) {
        for (std::size_t k = 0; k < carrier; ++k) check(fam.decode(k));
      } else {
        for (int s = 0; s < 4096; ++s) check(fam.random_elem(rng));
      }
      UniversalCheckOptions uo;
      uo.seed = seed;
      uo.cones = 8;
      auto up = verify_universal_properties(fam, uo);
      r.absorb(up);
      r.checks += checked;
      if (!ok) r.fail("canonical map is not bijective at N=" + std::to_string(big_n));
      json run;
      run["N"] = big_n;
      run["summands"] = slots + 1;
      run["mode"] = exhaustive ? "exhaustive" : "sampled";
      run["elements_checked"] = checked;
      run["result"] = ok && up.passed ? "ISO" : "NOT-ISO";
      runs.push_back(run);
    }
    r.mode = any_sampled ? "sampled" : "exhaustive";
    r.data["runs"] = runs;
    r.notes.push_back("the genuinely infinite statement over abelian groups is outside computational scope");
    return r;
  }
}

}  // namespace prodsum
