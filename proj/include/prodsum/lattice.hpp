#pragma once

// Complete lattice monoids (X, ⊥, 0) on finite carriers. A finite ⊥ is
// determined by its binary restriction, so factors store a join table and
// larger objects are products of factors with componentwise joins.

#include <algorithm>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prodsum/model.hpp"

namespace prodsum {

/// Carrier {0..n-1} with bottom 0 and a commutative idempotent associative
/// join having 0 as unit.
struct BaseLattice {
  int n = 1;
  std::vector<int> table;  // table[a * n + b] = a ⊥ b
  std::string label;

  int join(int a, int b) const { return table[static_cast<std::size_t>(a) * n + b]; }

  friend bool operator==(const BaseLattice& a, const BaseLattice& b) {
    return a.n == b.n && a.table == b.table;
  }
};

namespace detail {

inline std::string check_semilattice(int n, const std::vector<int>& t) {
  auto j = [&](int a, int b) { return t[static_cast<std::size_t>(a) * n + b]; };
  for (int a = 0; a < n; ++a) {
    if (j(0, a) != a || j(a, 0) != a) return "0 is not neutral at " + std::to_string(a);
    if (j(a, a) != a) return "join not idempotent at " + std::to_string(a);
    for (int b = 0; b < n; ++b) {
      if (j(a, b) < 0 || j(a, b) >= n) return "join leaves the carrier";
      if (j(a, b) != j(b, a)) return "join not commutative";
      for (int c = 0; c < n; ++c)
        if (j(j(a, b), c) != j(a, j(b, c))) return "join not associative";
    }
  }
  return {};
}

}  // namespace detail

class LatticeObject {
 public:
  LatticeObject() = default;  // one-point zero object

  static LatticeObject from_join_table(int n, std::vector<int> table, std::string label = {}) {
    if (n < 1 || table.size() != static_cast<std::size_t>(n) * n)
      throw InvalidObject("join table has wrong size");
    if (auto err = detail::check_semilattice(n, table); !err.empty()) throw InvalidObject(err);
    auto b = std::make_shared<BaseLattice>();
    b->n = n;
    b->table = std::move(table);
    b->label = label.empty() ? "L" + std::to_string(n) : std::move(label);
    return LatticeObject({std::move(b)});
  }

  /// Builds an object from ⊥ given on all subsets (bitmask -> element).
  /// Checks ⊥∅ = 0, ⊥(A ∪ {0}) = ⊥A, ⊥{x} = x and general associativity over
  /// every family of subsets; only carriers of size <= 4 are accepted.
  static LatticeObject from_join_all(int n, const std::function<int(unsigned)>& join_all,
                                     std::string label = {}) {
    if (n < 1 || n > 4) throw InvalidObject("extensional join_all only for carriers of size 1..4");
    const unsigned subsets = 1u << n;
    std::vector<int> ja(subsets);
    for (unsigned s = 0; s < subsets; ++s) {
      ja[s] = join_all(s);
      if (ja[s] < 0 || ja[s] >= n) throw InvalidObject("join_all leaves the carrier");
    }
    if (ja[0] != 0) throw InvalidObject("join_all(empty) must be 0");
    for (unsigned s = 0; s < subsets; ++s)
      if (ja[s | 1u] != ja[s]) throw InvalidObject("adding 0 changes join_all");
    for (int x = 0; x < n; ++x)
      if (ja[1u << x] != x) throw InvalidObject("join_all({x}) != x");
    // general associativity: ⊥(∪ A_i) = ⊥{⊥A_i} for every family {A_i}
    const unsigned long families = 1ul << subsets;
    for (unsigned long fam = 0; fam < families; ++fam) {
      unsigned uni = 0, images = 0;
      for (unsigned s = 0; s < subsets; ++s)
        if (fam >> s & 1ul) {
          uni |= s;
          images |= 1u << ja[s];
        }
      if (ja[uni] != ja[images]) throw InvalidObject("general associativity fails");
    }
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) t[a * n + b] = ja[(1u << a) | (1u << b)];
    return from_join_table(n, std::move(t), std::move(label));
  }

  static LatticeObject chain(int k) {
    std::vector<int> t(static_cast<std::size_t>(k) * k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) t[a * k + b] = std::max(a, b);
    return from_join_table(k, std::move(t), "chain" + std::to_string(k));
  }

  /// Subsets of a k-set under union, as a k-fold product of chain2.
  static LatticeObject powerset(int k) {
    LatticeObject p;
    for (int i = 0; i < k; ++i) p.factors_.push_back(chain(2).factors_.front());
    return p;
  }

  static LatticeObject product(const std::vector<LatticeObject>& parts) {
    LatticeObject p;
    for (const auto& o : parts) p.factors_.insert(p.factors_.end(), o.factors_.begin(), o.factors_.end());
    return p;
  }

  /// Every labelled join table with bottom 0 on 1..max_size elements.
  static std::vector<LatticeObject> all_up_to(int max_size) {
    std::vector<LatticeObject> out;
    for (int n = 1; n <= max_size; ++n) {
      std::vector<std::pair<int, int>> free;
      for (int a = 1; a < n; ++a)
        for (int b = a + 1; b < n; ++b) free.emplace_back(a, b);
      std::vector<int> t(static_cast<std::size_t>(n) * n);
      for (int a = 0; a < n; ++a) {
        t[a * n + a] = a;
        t[a] = t[a * n] = a;
      }
      std::size_t combos = 1;
      for (std::size_t k = 0; k < free.size(); ++k) combos *= n;
      for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rest = c;
        for (auto [a, b] : free) {
          int v = static_cast<int>(rest % n);
          rest /= n;
          t[a * n + b] = t[b * n + a] = v;
        }
        if (detail::check_semilattice(n, t).empty())
          out.push_back(from_join_table(n, t, "L" + std::to_string(n) + "#" + std::to_string(c)));
      }
    }
    return out;
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (const auto& f : factors_) s *= static_cast<std::size_t>(f->n);
    return s;
  }

  int join(int a, int b) const {
    int result = 0, radix = 1;
    for (const auto& f : factors_) {
      int da = a % f->n, db = b % f->n;
      a /= f->n;
      b /= f->n;
      result += radix * f->join(da, db);
      radix *= f->n;
    }
    return result;
  }

  int join_all(const std::vector<int>& elems) const {
    int acc = 0;
    for (int e : elems) acc = join(acc, e);
    return acc;
  }

  bool leq(int a, int b) const { return join(a, b) == b; }

  const std::vector<std::shared_ptr<const BaseLattice>>& factors() const { return factors_; }

  std::string describe() const {
    if (factors_.empty()) return "1pt";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "x" : "") + factors_[i]->label;
    return s;
  }

  friend bool operator==(const LatticeObject& a, const LatticeObject& b) {
    if (a.factors_.size() != b.factors_.size()) return false;
    for (std::size_t i = 0; i < a.factors_.size(); ++i)
      if (!(*a.factors_[i] == *b.factors_[i])) return false;
    return true;
  }

 private:
  explicit LatticeObject(std::vector<std::shared_ptr<const BaseLattice>> f) : factors_(std::move(f)) {}
  std::vector<std::shared_ptr<const BaseLattice>> factors_;
};

/// Total function table dom -> cod preserving 0 and all joins.
class LatticeMorphism {
 public:
  LatticeMorphism() = default;

  /// Checked constructor: join preservation is verified exhaustively when
  /// |dom|^2 <= 2^20 and on 4096 seeded pairs otherwise.
  LatticeMorphism(LatticeObject dom, LatticeObject cod, std::vector<int> table)
      : dom_(std::move(dom)), cod_(std::move(cod)), t_(std::move(table)) {
    if (t_.size() != dom_.size()) throw InvalidMorphism("table size differs from |dom|");
    const int nc = static_cast<int>(cod_.size());
    for (int v : t_)
      if (v < 0 || v >= nc) throw InvalidMorphism("value outside codomain");
    if (t_[0] != 0) throw InvalidMorphism("f(0) != 0");
    const std::size_t n = t_.size();
    auto check = [&](int a, int b) {
      if (t_[dom_.join(a, b)] != cod_.join(t_[a], t_[b]))
        throw InvalidMorphism("join of " + std::to_string(a) + "," + std::to_string(b) +
                              " not preserved");
    };
    if (n * n <= (1u << 20)) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) check(static_cast<int>(a), static_cast<int>(b));
    } else {
      std::mt19937_64 rng(n);
      for (int s = 0; s < 4096; ++s) check(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
    }
  }

  static LatticeMorphism unchecked(LatticeObject dom, LatticeObject cod, std::vector<int> table) {
    LatticeMorphism f;
    f.dom_ = std::move(dom);
    f.cod_ = std::move(cod);
    f.t_ = std::move(table);
    return f;
  }

  const LatticeObject& dom() const { return dom_; }
  const LatticeObject& cod() const { return cod_; }
  int operator()(int x) const { return t_[x]; }
  const std::vector<int>& table() const { return t_; }

 private:
  LatticeObject dom_, cod_;
  std::vector<int> t_;
};

class LatticeModel {
 public:
  using Object = LatticeObject;
  using Morphism = LatticeMorphism;

  std::string name() const { return "lattice"; }
  Object zero_object() const { return {}; }

  Morphism identity(const Object& x) const {
    std::vector<int> t(x.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<int>(i);
    return Morphism::unchecked(x, x, std::move(t));
  }
  Morphism zero(const Object& x, const Object& y) const {
    return Morphism::unchecked(x, y, std::vector<int>(x.size(), 0));
  }
  Morphism constant_top(const Object& x, const Object& y) const;
  Morphism compose(const Morphism& outer, const Morphism& inner) const {
    if (!(inner.cod() == outer.dom())) throw DomainMismatch("lattice compose: shapes differ");
    std::vector<int> t(inner.dom().size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = outer(inner(static_cast<int>(i)));
    return Morphism::unchecked(inner.dom(), outer.cod(), std::move(t));
  }
  /// (f ⊥ g)(x) = f(x) ⊥ g(x)
  Morphism add(const Morphism& f, const Morphism& g) const {
    if (!(f.dom() == g.dom()) || !(f.cod() == g.cod()))
      throw ParallelismViolation("lattice add: morphisms not parallel");
    std::vector<int> t(f.dom().size());
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = f.cod().join(f(static_cast<int>(i)), g(static_cast<int>(i)));
    return Morphism::unchecked(f.dom(), f.cod(), std::move(t));
  }
  bool equal(const Morphism& f, const Morphism& g) const {
    return f.dom() == g.dom() && f.cod() == g.cod() && f.table() == g.table();
  }
  Object dom(const Morphism& f) const { return f.dom(); }
  Object cod(const Morphism& f) const { return f.cod(); }
  bool same_object(const Object& x, const Object& y) const { return x == y; }
  std::size_t carrier_size(const Object& x) const { return x.size(); }

  /// Exhaustive backtracking over function tables; only for small carriers.
  std::vector<Morphism> hom(const Object& x, const Object& y) const {
    const int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
    std::vector<Morphism> out;
    std::vector<int> t(nx, -1);
    t[0] = 0;
    // pairs a < b whose join is a later element c, grouped by c
    std::vector<std::vector<std::pair<int, int>>> landing(nx);
    for (int a = 1; a < nx; ++a)
      for (int b = a + 1; b < nx; ++b) {
        int c = x.join(a, b);
        if (c > b) landing[c].emplace_back(a, b);
      }
    std::function<void(int)> rec = [&](int k) {
      if (k == nx) {
        out.push_back(Morphism::unchecked(x, y, t));
        return;
      }
      for (int v = 0; v < ny; ++v) {
        t[k] = v;
        bool ok = true;
        for (int a = 0; a <= k && ok; ++a) {
          int c = x.join(a, k);
          if (c <= k && t[c] != y.join(t[a], v)) ok = false;
        }
        for (std::size_t e = 0; e < landing[k].size() && ok; ++e) {
          auto [a, b] = landing[k][e];
          if (v != y.join(t[a], t[b])) ok = false;
        }
        if (ok) rec(k + 1);
      }
      t[k] = -1;
    };
    rec(1);
    return out;
  }

  std::vector<long> key(const Morphism& f) const { return {f.table().begin(), f.table().end()}; }

  std::string describe(const Object& x) const { return x.describe(); }
  std::string describe(const Morphism& f) const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < f.table().size(); ++i) os << (i ? "," : "") << f.table()[i];
    os << "}";
    return os.str();
  }

  BinarySum<Object, Morphism> sum2(const Object& x, const Object& y) const {
    Object s = Object::product({x, y});
    const int nx = static_cast<int>(x.size()), ny = static_cast<int>(y.size());
    const int ns = nx * ny;
    std::vector<int> i(nx), j(ny), p(ns), q(ns);
    for (int a = 0; a < nx; ++a) i[a] = a;
    for (int b = 0; b < ny; ++b) j[b] = nx * b;
    for (int z = 0; z < ns; ++z) {
      p[z] = z % nx;
      q[z] = z / nx;
    }
    return {x, y, s, Morphism::unchecked(x, s, i), Morphism::unchecked(y, s, j),
            Morphism::unchecked(s, x, p), Morphism::unchecked(s, y, q)};
  }

  Morphism tuple2(const Morphism& f, const Morphism& g, const BinarySum<Object, Morphism>& s) const {
    const int nx = static_cast<int>(s.left.size());
    std::vector<int> t(f.dom().size());
    for (std::size_t w = 0; w < t.size(); ++w)
      t[w] = f(static_cast<int>(w)) + nx * g(static_cast<int>(w));
    return Morphism::unchecked(f.dom(), s.object, std::move(t));
  }

  Morphism cotuple2(const Morphism& f, const Morphism& g, const BinarySum<Object, Morphism>& s) const {
    const int nx = static_cast<int>(s.left.size());
    std::vector<int> t(s.object.size());
    for (std::size_t z = 0; z < t.size(); ++z) {
      int zz = static_cast<int>(z);
      t[z] = f.cod().join(f(zz % nx), g(zz / nx));
    }
    return Morphism::unchecked(s.object, f.cod(), std::move(t));
  }
};

inline LatticeMorphism LatticeModel::constant_top(const Object& x, const Object& y) const {
  // sends every nonzero element to the top of y
  int top = 0;
  for (int e = 0; e < static_cast<int>(y.size()); ++e) top = y.join(top, e);
  std::vector<int> t(x.size(), top);
  t[0] = 0;
  return Morphism(x, y, std::move(t));
}

static_assert(CategoryModel<LatticeModel>);

}  // namespace prodsum
