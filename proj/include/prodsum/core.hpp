#pragma once

// Morphism terms over a presentation of an AMon-enriched category: objects,
// index expressions a*n+b, and the term constructors with dom/cod checking.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prodsum/error.hpp"

namespace prodsum {

struct ObjectRef {
  enum class Kind { atomic, product, coproduct, zero };
  std::string name;
  Kind kind = Kind::atomic;
  /// Component object names. A single part marks an N-indexed power.
  std::vector<std::string> parts;
  bool indexed = false;

  static ObjectRef atomic(std::string name) { return {std::move(name), Kind::atomic, {}, false}; }
  static ObjectRef zero(std::string name) { return {std::move(name), Kind::zero, {}, false}; }
  static ObjectRef product(std::string name, std::vector<std::string> parts, bool indexed = false) {
    if (parts.empty()) throw InvalidObject("product '" + name + "' needs at least one part");
    return {std::move(name), Kind::product, std::move(parts), indexed};
  }
  static ObjectRef coproduct(std::string name, std::vector<std::string> parts, bool indexed = false) {
    if (parts.empty()) throw InvalidObject("coproduct '" + name + "' needs at least one part");
    return {std::move(name), Kind::coproduct, std::move(parts), indexed};
  }
  friend bool operator==(const ObjectRef&, const ObjectRef&) = default;
};

/// An index of the form coeff*var + offset with coeff in {1,2} and offset in
/// {0,1}, or a natural-number literal.
class IndexExpr {
 public:
  IndexExpr() = default;

  static IndexExpr literal(long value) {
    if (value < 0) throw IndexLanguageError("negative literal index");
    IndexExpr e;
    e.coeff_ = 0;
    e.offset_ = value;
    return e;
  }

  static IndexExpr variable(std::string var, int coeff = 1, int offset = 0) {
    if (var.empty()) throw IndexLanguageError("empty index variable");
    if (coeff != 1 && coeff != 2)
      throw IndexLanguageError("coefficient " + std::to_string(coeff) + " outside {1,2}");
    if (offset != 0 && offset != 1)
      throw IndexLanguageError("offset " + std::to_string(offset) + " outside {0,1}");
    IndexExpr e;
    e.var_ = std::move(var);
    e.coeff_ = coeff;
    e.offset_ = offset;
    return e;
  }

  bool is_literal() const { return var_.empty(); }
  long value() const { return offset_; }
  const std::string& var() const { return var_; }
  int coeff() const { return coeff_; }
  long offset() const { return offset_; }

  /// Substitutes bound variables. Returns nullopt when the result leaves the
  /// index language (e.g. 2*(n+1)).
  std::optional<IndexExpr> try_substitute(const std::map<std::string, IndexExpr>& sub) const {
    if (is_literal()) return *this;
    auto it = sub.find(var_);
    if (it == sub.end()) return *this;
    const IndexExpr& e = it->second;
    if (e.is_literal()) return literal(coeff_ * e.offset_ + offset_);
    int c = coeff_ * e.coeff_;
    long o = coeff_ * e.offset_ + offset_;
    if (c > 2 || o > 1) return std::nullopt;
    return variable(e.var_, c, static_cast<int>(o));
  }

  IndexExpr substitute(const std::map<std::string, IndexExpr>& sub) const {
    auto r = try_substitute(sub);
    if (!r) throw IndexLanguageError("substitution leaves the a*n+b index language: " + str());
    return *r;
  }

  long evaluate(const std::map<std::string, long>& env) const {
    if (is_literal()) return offset_;
    auto it = env.find(var_);
    if (it == env.end()) throw UnknownSymbol("unbound index variable " + var_);
    return coeff_ * it->second + offset_;
  }

  std::string str() const {
    if (is_literal()) return std::to_string(offset_);
    std::string s = coeff_ == 2 ? "2" + var_ : var_;
    if (offset_) s += "+1";
    return s;
  }

  friend auto operator<=>(const IndexExpr&, const IndexExpr&) = default;
  friend bool operator==(const IndexExpr&, const IndexExpr&) = default;

 private:
  std::string var_;
  int coeff_ = 0;
  long offset_ = 0;
};

/// Immutable symbolic morphism expression. Copies share structure.
class MorTerm {
 public:
  enum class Kind { gen, id, zero, comp, add };

  static MorTerm gen(std::string name, std::string dom, std::string cod,
                     std::optional<IndexExpr> index = std::nullopt) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::gen;
    n->name = std::move(name);
    n->index = std::move(index);
    n->dom = std::move(dom);
    n->cod = std::move(cod);
    return MorTerm(std::move(n));
  }
  static MorTerm indexed(std::string name, IndexExpr index, std::string dom, std::string cod) {
    return gen(std::move(name), std::move(dom), std::move(cod), std::move(index));
  }
  static MorTerm identity(const std::string& obj) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::id;
    n->dom = n->cod = obj;
    return MorTerm(std::move(n));
  }
  static MorTerm zero(std::string dom, std::string cod) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::zero;
    n->dom = std::move(dom);
    n->cod = std::move(cod);
    return MorTerm(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::optional<IndexExpr>& index() const { return node_->index; }
  const std::string& dom() const { return node_->dom; }
  const std::string& cod() const { return node_->cod; }
  /// For comp: outer∘inner. For add: left + right.
  const MorTerm& first() const { return *node_->a; }
  const MorTerm& second() const { return *node_->b; }

  std::string str() const { return render(false); }

  MorTerm substitute(const std::map<std::string, IndexExpr>& sub) const {
    switch (kind()) {
      case Kind::gen:
        if (!index()) return *this;
        return indexed(name(), index()->substitute(sub), dom(), cod());
      case Kind::id:
      case Kind::zero:
        return *this;
      case Kind::comp:
        return make_binary(Kind::comp, first().substitute(sub), second().substitute(sub));
      case Kind::add:
        return make_binary(Kind::add, first().substitute(sub), second().substitute(sub));
    }
    return *this;
  }

  void collect_vars(std::set<std::string>& out) const {
    if (kind() == Kind::gen && index() && !index()->is_literal()) out.insert(index()->var());
    if (kind() == Kind::comp || kind() == Kind::add) {
      first().collect_vars(out);
      second().collect_vars(out);
    }
  }

  std::set<std::string> vars() const {
    std::set<std::string> v;
    collect_vars(v);
    return v;
  }

  /// Structural identity of the syntax tree. Never used as morphism equality.
  static bool same_syntax(const MorTerm& a, const MorTerm& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.dom() != b.dom() || a.cod() != b.cod()) return false;
    switch (a.kind()) {
      case Kind::gen: return a.name() == b.name() && a.index() == b.index();
      case Kind::id:
      case Kind::zero: return true;
      default:
        return same_syntax(a.first(), b.first()) && same_syntax(a.second(), b.second());
    }
  }

  // Unchecked constructor used by compose/add_mor after validation.
  static MorTerm make_binary(Kind k, MorTerm a, MorTerm b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    if (k == Kind::comp) {
      n->dom = b.dom();
      n->cod = a.cod();
    } else {
      n->dom = a.dom();
      n->cod = a.cod();
    }
    n->a = std::make_shared<MorTerm>(std::move(a));
    n->b = std::make_shared<MorTerm>(std::move(b));
    return MorTerm(std::move(n));
  }

 private:
  struct Node {
    Kind kind = Kind::id;
    std::string name;
    std::optional<IndexExpr> index;
    std::string dom, cod;
    std::shared_ptr<const MorTerm> a, b;
  };

  explicit MorTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::string render(bool in_comp) const {
    switch (kind()) {
      case Kind::gen:
        return index() ? name() + "[" + index()->str() + "]" : name();
      case Kind::id:
        return "id(" + dom() + ")";
      case Kind::zero:
        return "zero(" + dom() + "," + cod() + ")";
      case Kind::comp:
        return first().render(true) + "." + second().render(true);
      case Kind::add: {
        std::string s = first().render(false) + " + " + second().render(false);
        return in_comp ? "(" + s + ")" : s;
      }
    }
    return {};
  }

  std::shared_ptr<const Node> node_;
};

/// outer∘inner. Requires cod(inner) = dom(outer).
inline MorTerm compose(const MorTerm& outer, const MorTerm& inner) {
  if (inner.cod() != outer.dom())
    throw DomainMismatch("cannot compose " + outer.str() + " : " + outer.dom() + " -> " +
                         outer.cod() + " after " + inner.str() + " : " + inner.dom() + " -> " +
                         inner.cod());
  return MorTerm::make_binary(MorTerm::Kind::comp, outer, inner);
}

/// Composes a chain written outermost first: compose_all({f, g, h}) = f.g.h
inline MorTerm compose_all(const std::vector<MorTerm>& chain) {
  if (chain.empty()) throw DomainMismatch("empty composition chain");
  MorTerm t = chain.back();
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) t = compose(*it, t);
  return t;
}

inline MorTerm add_mor(const MorTerm& f, const MorTerm& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod())
    throw ParallelismViolation(f.str() + " : " + f.dom() + " -> " + f.cod() + " and " + g.str() +
                               " : " + g.dom() + " -> " + g.cod() + " are not parallel");
  return MorTerm::make_binary(MorTerm::Kind::add, f, g);
}

}  // namespace prodsum
