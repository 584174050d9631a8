#pragma once

// Finite abelian groups Z/n1 + ... + Z/nk with homomorphisms as integer
// matrices. Hom-sets are abelian groups under entrywise addition.

#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "prodsum/model.hpp"

namespace prodsum {

struct FinAbObject {
  std::vector<long> moduli;  // empty = zero object

  FinAbObject() = default;
  explicit FinAbObject(std::vector<long> m) : moduli(std::move(m)) {
    for (long n : moduli)
      if (n < 1) throw InvalidObject("modulus must be >= 1");
  }
  std::size_t rank() const { return moduli.size(); }
  std::size_t order() const {
    std::size_t o = 1;
    for (long n : moduli) o *= static_cast<std::size_t>(n);
    return o;
  }
  friend bool operator==(const FinAbObject&, const FinAbObject&) = default;
};

/// Matrix with entry (j, i) = image of generator i of dom in component j of
/// cod, reduced mod cod.moduli[j].
class FinAbMorphism {
 public:
  FinAbMorphism() = default;
  FinAbMorphism(FinAbObject dom, FinAbObject cod, std::vector<long> entries)
      : dom_(std::move(dom)), cod_(std::move(cod)), a_(std::move(entries)) {
    if (a_.size() != dom_.rank() * cod_.rank())
      throw InvalidMorphism("matrix has " + std::to_string(a_.size()) + " entries, expected " +
                            std::to_string(dom_.rank() * cod_.rank()));
    for (std::size_t j = 0; j < cod_.rank(); ++j)
      for (std::size_t i = 0; i < dom_.rank(); ++i) {
        long m = cod_.moduli[j];
        long& v = a_[j * dom_.rank() + i];
        v = ((v % m) + m) % m;
        if ((dom_.moduli[i] * v) % m != 0)
          throw InvalidMorphism("entry (" + std::to_string(j) + "," + std::to_string(i) + ")=" +
                                std::to_string(v) + " violates the order condition Z/" +
                                std::to_string(dom_.moduli[i]) + " -> Z/" + std::to_string(m));
      }
  }

  const FinAbObject& dom() const { return dom_; }
  const FinAbObject& cod() const { return cod_; }
  long at(std::size_t row, std::size_t col) const { return a_[row * dom_.rank() + col]; }
  const std::vector<long>& entries() const { return a_; }

  std::vector<long> apply(const std::vector<long>& x) const {
    std::vector<long> y(cod_.rank(), 0);
    for (std::size_t j = 0; j < cod_.rank(); ++j) {
      long s = 0;
      for (std::size_t i = 0; i < dom_.rank(); ++i) s += at(j, i) * x[i];
      y[j] = s % cod_.moduli[j];
    }
    return y;
  }

  friend bool operator==(const FinAbMorphism&, const FinAbMorphism&) = default;

 private:
  FinAbObject dom_, cod_;
  std::vector<long> a_;
};

class FinAbModel {
 public:
  using Object = FinAbObject;
  using Morphism = FinAbMorphism;

  std::string name() const { return "finab"; }
  Object zero_object() const { return {}; }

  Morphism identity(const Object& x) const {
    std::vector<long> a(x.rank() * x.rank(), 0);
    for (std::size_t i = 0; i < x.rank(); ++i) a[i * x.rank() + i] = 1;
    return {x, x, std::move(a)};
  }
  Morphism scalar(const Object& x, long k) const {
    std::vector<long> a(x.rank() * x.rank(), 0);
    for (std::size_t i = 0; i < x.rank(); ++i) a[i * x.rank() + i] = k;
    return {x, x, std::move(a)};
  }
  Morphism zero(const Object& x, const Object& y) const {
    return {x, y, std::vector<long>(x.rank() * y.rank(), 0)};
  }
  Morphism compose(const Morphism& outer, const Morphism& inner) const {
    if (!(inner.cod() == outer.dom())) throw DomainMismatch("finab compose: shapes differ");
    const auto& x = inner.dom();
    const auto& z = outer.cod();
    const std::size_t ny = inner.cod().rank();
    std::vector<long> a(x.rank() * z.rank(), 0);
    for (std::size_t k = 0; k < z.rank(); ++k)
      for (std::size_t i = 0; i < x.rank(); ++i) {
        long s = 0;
        for (std::size_t j = 0; j < ny; ++j) s += outer.at(k, j) * inner.at(j, i);
        a[k * x.rank() + i] = s;
      }
    return {x, z, std::move(a)};
  }
  Morphism add(const Morphism& f, const Morphism& g) const {
    if (!(f.dom() == g.dom()) || !(f.cod() == g.cod()))
      throw ParallelismViolation("finab add: morphisms not parallel");
    std::vector<long> a = f.entries();
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += g.entries()[k];
    return {f.dom(), f.cod(), std::move(a)};
  }
  Morphism negate(const Morphism& f) const {
    std::vector<long> a = f.entries();
    for (auto& v : a) v = -v;
    return {f.dom(), f.cod(), std::move(a)};
  }
  bool equal(const Morphism& f, const Morphism& g) const { return f == g; }
  Object dom(const Morphism& f) const { return f.dom(); }
  Object cod(const Morphism& f) const { return f.cod(); }
  bool same_object(const Object& x, const Object& y) const { return x == y; }
  std::size_t carrier_size(const Object& x) const { return x.order(); }

  /// All homomorphisms, enumerated entrywise under the order condition.
  std::vector<Morphism> hom(const Object& x, const Object& y) const {
    const std::size_t cells = x.rank() * y.rank();
    std::vector<std::vector<long>> allowed(cells);
    for (std::size_t j = 0; j < y.rank(); ++j)
      for (std::size_t i = 0; i < x.rank(); ++i) {
        long m = y.moduli[j];
        for (long v = 0; v < m; ++v)
          if ((x.moduli[i] * v) % m == 0) allowed[j * x.rank() + i].push_back(v);
      }
    std::vector<Morphism> out;
    std::vector<std::size_t> pos(cells, 0);
    std::vector<long> a(cells);
    while (true) {
      for (std::size_t c = 0; c < cells; ++c) a[c] = allowed[c][pos[c]];
      out.emplace_back(x, y, a);
      std::size_t c = 0;
      for (; c < cells; ++c) {
        if (++pos[c] < allowed[c].size()) break;
        pos[c] = 0;
      }
      if (c == cells) break;
    }
    return out;
  }

  std::vector<long> key(const Morphism& f) const { return f.entries(); }

  std::string describe(const Object& x) const {
    if (x.moduli.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < x.rank(); ++i) s += (i ? "+Z/" : "Z/") + std::to_string(x.moduli[i]);
    return s;
  }
  std::string describe(const Morphism& f) const {
    std::ostringstream os;
    os << "[";
    for (std::size_t j = 0; j < f.cod().rank(); ++j) {
      if (j) os << "; ";
      for (std::size_t i = 0; i < f.dom().rank(); ++i) os << (i ? " " : "") << f.at(j, i);
    }
    os << "]";
    return os.str();
  }

  BinarySum<Object, Morphism> sum2(const Object& x, const Object& y) const {
    std::vector<long> m = x.moduli;
    m.insert(m.end(), y.moduli.begin(), y.moduli.end());
    Object s(m);
    const std::size_t a = x.rank(), b = y.rank(), n = a + b;
    std::vector<long> i(n * a, 0), j(n * b, 0), p(a * n, 0), q(b * n, 0);
    for (std::size_t k = 0; k < a; ++k) i[k * a + k] = p[k * n + k] = 1;
    for (std::size_t k = 0; k < b; ++k) j[(a + k) * b + k] = q[k * n + a + k] = 1;
    return {x, y, s, Morphism(x, s, i), Morphism(y, s, j), Morphism(s, x, p), Morphism(s, y, q)};
  }

  /// <f, g> : W -> X ⊕ Y by stacking rows.
  Morphism tuple2(const Morphism& f, const Morphism& g, const BinarySum<Object, Morphism>& s) const {
    if (!(f.dom() == g.dom())) throw DomainMismatch("tuple2: different domains");
    std::vector<long> a = f.entries();
    a.insert(a.end(), g.entries().begin(), g.entries().end());
    return {f.dom(), s.object, std::move(a)};
  }

  /// [f, g] : X ⊕ Y -> W by concatenating columns.
  Morphism cotuple2(const Morphism& f, const Morphism& g, const BinarySum<Object, Morphism>& s) const {
    if (!(f.cod() == g.cod())) throw DomainMismatch("cotuple2: different codomains");
    const auto& w = f.cod();
    const std::size_t a = f.dom().rank(), b = g.dom().rank();
    std::vector<long> m(w.rank() * (a + b));
    for (std::size_t r = 0; r < w.rank(); ++r) {
      for (std::size_t c = 0; c < a; ++c) m[r * (a + b) + c] = f.at(r, c);
      for (std::size_t c = 0; c < b; ++c) m[r * (a + b) + a + c] = g.at(r, c);
    }
    return {s.object, w, std::move(m)};
  }

  /// Z/n1 + ... as a convenience constructor.
  static Object Z(std::vector<long> moduli) { return Object(std::move(moduli)); }

  /// Every abelian group of order <= max_order in invariant-factor form, the
  /// zero object included.
  static std::vector<Object> groups_up_to(long max_order) {
    std::vector<Object> out{Object{}};
    // invariant factors d1 | d2 | ... with product <= max_order, each > 1
    std::vector<long> cur;
    std::function<void(long, long)> rec = [&](long prev, long prod) {
      for (long d = prev; d * prod <= max_order; d += prev) {
        if (d < 2) continue;
        cur.push_back(d);
        out.emplace_back(cur);
        rec(d, prod * d);
        cur.pop_back();
      }
    };
    rec(1, 1);
    return out;
  }
};

static_assert(CategoryModel<FinAbModel>);

}  // namespace prodsum
