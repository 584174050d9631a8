#pragma once

// Concrete evaluation backends. A model supplies finite carriers, an exact
// morphism representation, composition, hom-monoid addition and binary
// biproducts built from its own universal properties.

#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "prodsum/core.hpp"
#include "prodsum/report.hpp"

namespace prodsum {

/// Binary biproduct data as produced by a model: i, j injections and p, q
/// projections of `object` = left ⊕ right.
template <class Object, class Morphism>
struct BinarySum {
  Object left, right, object;
  Morphism i, j, p, q;
};

template <class M>
concept CategoryModel = requires(const M& m, const typename M::Object& x,
                                 const typename M::Morphism& f) {
  { m.name() } -> std::convertible_to<std::string>;
  { m.zero_object() } -> std::same_as<typename M::Object>;
  { m.identity(x) } -> std::same_as<typename M::Morphism>;
  { m.zero(x, x) } -> std::same_as<typename M::Morphism>;
  { m.compose(f, f) } -> std::same_as<typename M::Morphism>;
  { m.add(f, f) } -> std::same_as<typename M::Morphism>;
  { m.equal(f, f) } -> std::convertible_to<bool>;
  { m.dom(f) } -> std::same_as<typename M::Object>;
  { m.cod(f) } -> std::same_as<typename M::Object>;
  { m.hom(x, x) } -> std::same_as<std::vector<typename M::Morphism>>;
  { m.key(f) } -> std::same_as<std::vector<long>>;
  { m.carrier_size(x) } -> std::convertible_to<std::size_t>;
  { m.describe(x) } -> std::convertible_to<std::string>;
  { m.describe(f) } -> std::convertible_to<std::string>;
  { m.sum2(x, x) } -> std::same_as<BinarySum<typename M::Object, typename M::Morphism>>;
  { m.tuple2(f, f, m.sum2(x, x)) } -> std::same_as<typename M::Morphism>;
  { m.cotuple2(f, f, m.sum2(x, x)) } -> std::same_as<typename M::Morphism>;
  { m.same_object(x, x) } -> std::convertible_to<bool>;
};

/// Hom-monoid view of a model on one (dom, cod) pair.
template <CategoryModel M>
struct HomMonoidWitness {
  typename M::Object dom, cod;
  std::function<typename M::Morphism(const typename M::Morphism&, const typename M::Morphism&)> add;
  typename M::Morphism zero;
};

template <CategoryModel M>
HomMonoidWitness<M> hom_monoid(const M& model, const typename M::Object& dom,
                               const typename M::Object& cod) {
  return {dom, cod,
          [&model](const typename M::Morphism& f, const typename M::Morphism& g) {
            return model.add(f, g);
          },
          model.zero(dom, cod)};
}

/// Binds the symbols of a presentation to concrete data of a model.
template <CategoryModel M>
struct Interpretation {
  std::function<typename M::Object(const std::string&)> object;
  std::function<typename M::Morphism(const std::string&, std::optional<long>)> generator;
};

template <CategoryModel M>
typename M::Morphism evaluate(const M& model, const MorTerm& t, const Interpretation<M>& in,
                              const std::map<std::string, long>& env = {}) {
  using K = MorTerm::Kind;
  switch (t.kind()) {
    case K::gen: {
      std::optional<long> idx;
      if (t.index()) idx = t.index()->evaluate(env);
      return in.generator(t.name(), idx);
    }
    case K::id:
      return model.identity(in.object(t.dom()));
    case K::zero:
      return model.zero(in.object(t.dom()), in.object(t.cod()));
    case K::comp:
      return model.compose(evaluate(model, t.first(), in, env), evaluate(model, t.second(), in, env));
    case K::add:
      return model.add(evaluate(model, t.first(), in, env), evaluate(model, t.second(), in, env));
  }
  throw InvalidMorphism("unreachable term kind");
}

namespace detail {

struct KeyHash {
  std::size_t operator()(const std::vector<long>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (long x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

/// Dense enumeration of a finite hom-set with its addition table.
template <CategoryModel M>
struct HomTable {
  std::vector<typename M::Morphism> elems;
  std::unordered_map<std::vector<long>, std::uint32_t, KeyHash> index;
  std::vector<std::uint32_t> add;  // add[a * n + b]
  std::uint32_t zero = 0;
  bool closed = true;              // addition stayed inside the enumeration

  std::size_t size() const { return elems.size(); }

  std::optional<std::uint32_t> find(const M& m, const typename M::Morphism& f) const {
    auto it = index.find(m.key(f));
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

template <CategoryModel M>
HomTable<M> build_hom_table(const M& m, const typename M::Object& x, const typename M::Object& y) {
  HomTable<M> t;
  t.elems = m.hom(x, y);
  for (std::uint32_t i = 0; i < t.elems.size(); ++i) t.index.emplace(m.key(t.elems[i]), i);
  auto z = t.find(m, m.zero(x, y));
  if (!z) {
    t.closed = false;
    return t;
  }
  t.zero = *z;
  const std::size_t n = t.size();
  t.add.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto s = t.find(m, m.add(t.elems[a], t.elems[b]));
      if (!s) {
        t.closed = false;
        return t;
      }
      t.add[a * n + b] = *s;
    }
  return t;
}

}  // namespace detail

struct EnrichmentOptions {
  std::size_t samples = 2000;
  std::uint64_t seed = 0x5eed;
  /// Largest number of law instances checked exhaustively per law; beyond
  /// that `samples` random instances are drawn.
  std::uint64_t exhaustive_limit = 200'000'000;
};

/// Checks that hom-sets over `objs` are commutative monoids and that
/// composition is bilinear with absorbing zeros.
template <CategoryModel M>
Report check_enrichment(const M& m, const std::vector<typename M::Object>& objs,
                        const EnrichmentOptions& opt = {}) {
  Report r;
  r.name = "enrichment(" + std::string(m.name()) + ")";
  std::mt19937_64 rng(opt.seed);
  bool sampled = false;
  auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  const std::size_t n_obj = objs.size();
  std::vector<detail::HomTable<M>> hom(n_obj * n_obj);
  for (std::size_t a = 0; a < n_obj; ++a)
    for (std::size_t b = 0; b < n_obj; ++b) {
      auto& t = hom[a * n_obj + b] = detail::build_hom_table(m, objs[a], objs[b]);
      std::string where = "Hom(" + m.describe(objs[a]) + ", " + m.describe(objs[b]) + ")";
      if (!t.closed) {
        r.fail(where + ": zero or a sum fell outside the enumerated hom-set");
        continue;
      }
      const std::size_t n = t.size();
      auto sum = [&t, n](std::size_t x, std::size_t y) { return t.add[x * n + y]; };
      for (std::size_t f = 0; f < n; ++f) {
        ++r.checks;
        if (sum(f, t.zero) != f || sum(t.zero, f) != f)
          r.fail(where + ": zero not neutral for " + m.describe(t.elems[f]));
        for (std::size_t g = 0; g < n; ++g) {
          ++r.checks;
          if (sum(f, g) != sum(g, f))
            r.fail(where + ": f+g != g+f for f=" + m.describe(t.elems[f]) +
                   ", g=" + m.describe(t.elems[g]));
        }
      }
      auto assoc = [&](std::size_t f, std::size_t g, std::size_t h) {
        ++r.checks;
        if (sum(sum(f, g), h) != sum(f, sum(g, h)))
          r.fail(where + ": (f+g)+h != f+(g+h) for f=" + m.describe(t.elems[f]) +
                 ", g=" + m.describe(t.elems[g]) + ", h=" + m.describe(t.elems[h]));
      };
      if (static_cast<std::uint64_t>(n) * n * n <= opt.exhaustive_limit) {
        for (std::size_t f = 0; f < n; ++f)
          for (std::size_t g = 0; g < n; ++g)
            for (std::size_t h = 0; h < n; ++h) assoc(f, g, h);
      } else {
        sampled = true;
        for (std::size_t s = 0; s < opt.samples; ++s) assoc(pick(n), pick(n), pick(n));
      }
    }
  if (!r.passed) return r;

  // Bilinearity of composition for every triple of objects X -> Y -> Z.
  for (std::size_t x = 0; x < n_obj; ++x)
    for (std::size_t y = 0; y < n_obj; ++y)
      for (std::size_t z = 0; z < n_obj; ++z) {
        const auto& hxy = hom[x * n_obj + y];
        const auto& hyz = hom[y * n_obj + z];
        const auto& hxz = hom[x * n_obj + z];
        const std::size_t a = hxy.size(), b = hyz.size(), c = hxz.size();
        if (a == 0 || b == 0) continue;
        std::vector<std::uint32_t> comp(a * b);  // comp[h * a + f] = h∘f
        bool ok = true;
        for (std::size_t h = 0; h < b && ok; ++h)
          for (std::size_t f = 0; f < a; ++f) {
            auto idx = hxz.find(m, m.compose(hyz.elems[h], hxy.elems[f]));
            if (!idx) {
              r.fail("composite " + m.describe(hyz.elems[h]) + " o " + m.describe(hxy.elems[f]) +
                     " is not a morphism");
              ok = false;
              break;
            }
            comp[h * a + f] = *idx;
          }
        if (!ok) return r;
        auto addxz = [&hxz, c](std::size_t u, std::size_t v) { return hxz.add[u * c + v]; };
        auto addxy = [&hxy, a](std::size_t u, std::size_t v) { return hxy.add[u * a + v]; };
        auto addyz = [&hyz, b](std::size_t u, std::size_t v) { return hyz.add[u * b + v]; };
        auto cp = [&comp, a](std::size_t h, std::size_t f) { return comp[h * a + f]; };
        auto where = [&] {
          return m.describe(objs[x]) + " -> " + m.describe(objs[y]) + " -> " + m.describe(objs[z]);
        };
        for (std::size_t f = 0; f < a; ++f) {
          ++r.checks;
          if (cp(hyz.zero, f) != hxz.zero)
            r.fail(where() + ": 0 o f != 0 for f=" + m.describe(hxy.elems[f]));
        }
        for (std::size_t h = 0; h < b; ++h) {
          ++r.checks;
          if (cp(h, hxy.zero) != hxz.zero)
            r.fail(where() + ": h o 0 != 0 for h=" + m.describe(hyz.elems[h]));
        }
        auto left = [&](std::size_t h, std::size_t f, std::size_t g) {
          ++r.checks;
          if (cp(h, addxy(f, g)) != addxz(cp(h, f), cp(h, g)))
            r.fail(where() + ": h(f+g) != hf+hg for h=" + m.describe(hyz.elems[h]) +
                   ", f=" + m.describe(hxy.elems[f]) + ", g=" + m.describe(hxy.elems[g]));
        };
        auto right = [&](std::size_t h1, std::size_t h2, std::size_t f) {
          ++r.checks;
          if (cp(addyz(h1, h2), f) != addxz(cp(h1, f), cp(h2, f)))
            r.fail(where() + ": (h1+h2)f != h1f+h2f for h1=" + m.describe(hyz.elems[h1]) +
                   ", h2=" + m.describe(hyz.elems[h2]) + ", f=" + m.describe(hxy.elems[f]));
        };
        if (static_cast<std::uint64_t>(a) * a * b <= opt.exhaustive_limit) {
          for (std::size_t h = 0; h < b; ++h)
            for (std::size_t f = 0; f < a; ++f)
              for (std::size_t g = 0; g < a; ++g) left(h, f, g);
        } else {
          sampled = true;
          for (std::size_t s = 0; s < opt.samples; ++s) left(pick(b), pick(a), pick(a));
        }
        if (static_cast<std::uint64_t>(b) * b * a <= opt.exhaustive_limit) {
          for (std::size_t h1 = 0; h1 < b; ++h1)
            for (std::size_t h2 = 0; h2 < b; ++h2)
              for (std::size_t f = 0; f < a; ++f) right(h1, h2, f);
        } else {
          sampled = true;
          for (std::size_t s = 0; s < opt.samples; ++s) right(pick(b), pick(b), pick(a));
        }
        if (!r.passed) return r;
      }
  r.mode = sampled ? "sampled" : "exhaustive";
  return r;
}

/// Searches the finite hom-set for a two-sided inverse of an endomorphism or
/// isomorphism f : X -> Y.
template <CategoryModel M>
std::optional<typename M::Morphism> find_inverse(const M& m, const typename M::Morphism& f) {
  auto x = m.dom(f);
  auto y = m.cod(f);
  for (const auto& g : m.hom(y, x))
    if (m.equal(m.compose(g, f), m.identity(x)) && m.equal(m.compose(f, g), m.identity(y)))
      return g;
  return std::nullopt;
}

/// Additive inverse of f in Hom(dom f, cod f), if any.
template <CategoryModel M>
std::optional<typename M::Morphism> find_negative(const M& m, const typename M::Morphism& f) {
  auto z = m.zero(m.dom(f), m.cod(f));
  for (const auto& g : m.hom(m.dom(f), m.cod(f)))
    if (m.equal(m.add(f, g), z)) return g;
  return std::nullopt;
}

}  // namespace prodsum
