#pragma once

// Finite presentations: objects, generator morphisms (possibly ℕ-indexed
// families), product/coproduct declarations and labelled schematic relations.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prodsum/core.hpp"

namespace prodsum {

struct GeneratorDecl {
  std::string name;
  bool indexed = false;
  std::string dom, cod;
  // per-member (dom, cod) of a finite family whose members differ in type;
  // such a family only accepts literal indices
  std::vector<std::pair<std::string, std::string>> members;

  std::pair<std::string, std::string> type_at(const IndexExpr& idx) const {
    if (members.empty()) return {dom, cod};
    if (!idx.is_literal() || idx.value() >= static_cast<long>(members.size()))
      throw IndexLanguageError("family " + name + " needs a literal index below " +
                               std::to_string(members.size()));
    return members[static_cast<std::size_t>(idx.value())];
  }

  friend bool operator==(const GeneratorDecl&, const GeneratorDecl&) = default;
};

/// `object` is the product (or coproduct) of `parts` with projection (or
/// injection) family `family`. An indexed declaration has a single part
/// repeated over ℕ; otherwise member k of the family is family[k].
struct LimitDecl {
  std::string object;
  std::vector<std::string> parts;
  bool indexed = false;
  std::string family;

  std::string part(long k) const { return indexed ? parts.front() : parts.at(static_cast<std::size_t>(k)); }
  friend bool operator==(const LimitDecl&, const LimitDecl&) = default;
};

struct DeltaCondition {
  IndexExpr i, j;
  friend bool operator==(const DeltaCondition&, const DeltaCondition&) = default;
};

/// lhs = rhs for all values of the index variables. With a delta condition
/// the relation reads lhs = rhs when i = j and lhs = 0 otherwise.
struct SchematicRelation {
  std::string label;
  MorTerm lhs, rhs;
  std::optional<DeltaCondition> delta;

  std::set<std::string> index_vars() const {
    auto v = lhs.vars();
    auto w = rhs.vars();
    v.insert(w.begin(), w.end());
    if (delta) {
      if (!delta->i.is_literal()) v.insert(delta->i.var());
      if (!delta->j.is_literal()) v.insert(delta->j.var());
    }
    return v;
  }
};

/// Model binding lines carried through parse/print but interpreted by tools.
struct ModelBinding {
  std::string model;
  std::vector<std::pair<std::string, std::string>> assignments;  // symbol -> literal text
  friend bool operator==(const ModelBinding&, const ModelBinding&) = default;
};

class Presentation {
 public:
  std::vector<ObjectRef> objects;
  std::vector<GeneratorDecl> generators;
  std::vector<LimitDecl> products, coproducts;
  std::vector<SchematicRelation> relations;
  std::vector<std::string> flags;  // hypothesis flags such as idempotent_homs
  std::vector<ModelBinding> bindings;

  bool has_object(const std::string& n) const { return find_object(n) != nullptr; }

  const ObjectRef* find_object(const std::string& n) const {
    for (const auto& o : objects)
      if (o.name == n) return &o;
    return nullptr;
  }

  const GeneratorDecl* find_generator(const std::string& n) const {
    for (const auto& g : generators)
      if (g.name == n) return &g;
    return nullptr;
  }

  const LimitDecl* product_of(const std::string& obj) const { return find_decl(products, obj); }
  const LimitDecl* coproduct_of(const std::string& obj) const { return find_decl(coproducts, obj); }

  bool has_flag(const std::string& f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
  }

  void add_object(ObjectRef o) {
    if (has_object(o.name)) throw InvalidObject("object " + o.name + " declared twice");
    if (o.kind == ObjectRef::Kind::zero)
      for (const auto& x : objects)
        if (x.kind == ObjectRef::Kind::zero) throw InvalidObject("second zero object " + o.name);
    objects.push_back(std::move(o));
  }

  void add_generator(const std::string& name, const std::string& dom, const std::string& cod,
                     bool indexed = false) {
    if (find_generator(name)) throw UnknownSymbol("generator " + name + " declared twice");
    require_object(dom);
    require_object(cod);
    generators.push_back({name, indexed, dom, cod, {}});
  }

  /// Declares `obj` as a product and adds the projection family.
  void declare_product(const std::string& obj, std::vector<std::string> parts, bool indexed,
                       const std::string& family) {
    declare(products, obj, std::move(parts), indexed, family, true);
  }

  void declare_coproduct(const std::string& obj, std::vector<std::string> parts, bool indexed,
                         const std::string& family) {
    declare(coproducts, obj, std::move(parts), indexed, family, false);
  }

  void add_relation(std::string label, MorTerm lhs, MorTerm rhs,
                    std::optional<DeltaCondition> delta = std::nullopt) {
    if (lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod())
      throw ParallelismViolation("relation " + label + ": " + lhs.str() + " and " + rhs.str() +
                                 " are not parallel");
    relations.push_back({std::move(label), std::move(lhs), std::move(rhs), std::move(delta)});
  }

  /// Drops every relation carrying `label`; returns how many were removed.
  std::size_t remove_label(const std::string& label) {
    auto before = relations.size();
    std::erase_if(relations, [&](const SchematicRelation& r) { return r.label == label; });
    return before - relations.size();
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& r : relations)
      if (std::find(out.begin(), out.end(), r.label) == out.end()) out.push_back(r.label);
    return out;
  }

  // Term builders with dom/cod looked up from the declarations.
  MorTerm gen(const std::string& name) const {
    const auto* g = require_generator(name);
    if (g->indexed) throw IndexLanguageError("generator " + name + " needs an index");
    return MorTerm::gen(name, g->dom, g->cod);
  }
  MorTerm gen(const std::string& name, IndexExpr idx) const {
    const auto* g = require_generator(name);
    if (!g->indexed) throw IndexLanguageError("generator " + name + " takes no index");
    auto [d, c] = g->type_at(idx);
    return MorTerm::indexed(name, std::move(idx), d, c);
  }
  MorTerm gen(const std::string& name, long literal) const { return gen(name, IndexExpr::literal(literal)); }
  MorTerm gen(const std::string& name, const std::string& var, int coeff = 1, int offset = 0) const {
    return gen(name, IndexExpr::variable(var, coeff, offset));
  }
  MorTerm id(const std::string& obj) const {
    require_object(obj);
    return MorTerm::identity(obj);
  }
  MorTerm zero(const std::string& dom, const std::string& cod) const {
    require_object(dom);
    require_object(cod);
    return MorTerm::zero(dom, cod);
  }

  /// Checks every generator occurrence in `t` against its declaration.
  void check_term(const MorTerm& t) const {
    using K = MorTerm::Kind;
    switch (t.kind()) {
      case K::gen: {
        const auto* g = require_generator(t.name());
        if (g->indexed != t.index().has_value())
          throw IndexLanguageError("generator " + t.name() + (g->indexed ? " needs" : " takes no") + " index");
        auto [d, c] = t.index() ? g->type_at(*t.index()) : std::pair{g->dom, g->cod};
        if (d != t.dom() || c != t.cod())
          throw DomainMismatch("generator " + t.name() + " used with type " + t.dom() + " -> " + t.cod());
        return;
      }
      case K::id:
      case K::zero:
        require_object(t.dom());
        require_object(t.cod());
        return;
      case K::comp:
      case K::add:
        check_term(t.first());
        check_term(t.second());
        return;
    }
  }

 private:
  static const LimitDecl* find_decl(const std::vector<LimitDecl>& v, const std::string& obj) {
    for (const auto& d : v)
      if (d.object == obj) return &d;
    return nullptr;
  }

  void require_object(const std::string& n) const {
    if (!has_object(n)) throw UnknownSymbol("unknown object " + n);
  }

  const GeneratorDecl* require_generator(const std::string& n) const {
    const auto* g = find_generator(n);
    if (!g) throw UnknownSymbol("unknown generator " + n);
    return g;
  }

  void declare(std::vector<LimitDecl>& v, const std::string& obj, std::vector<std::string> parts,
               bool indexed, const std::string& family, bool is_product) {
    require_object(obj);
    if (find_decl(v, obj)) throw InvalidObject(obj + " already has this declaration");
    if (parts.empty()) throw InvalidObject(obj + ": empty part list");
    if (indexed && parts.size() != 1) throw InvalidObject(obj + ": indexed family needs one part");
    for (const auto& p : parts) require_object(p);
    // one generator family per declaration, typed per member on use
    if (find_generator(family)) throw UnknownSymbol("family " + family + " clashes with a generator");
    GeneratorDecl g{family, true, is_product ? obj : parts[0], is_product ? parts[0] : obj, {}};
    bool uniform = std::all_of(parts.begin(), parts.end(), [&](auto& p) { return p == parts[0]; });
    if (!indexed && !uniform)
      for (const auto& p : parts) g.members.emplace_back(is_product ? obj : p, is_product ? p : obj);
    generators.push_back(std::move(g));
    v.push_back({obj, std::move(parts), indexed, family});
  }
};

}  // namespace prodsum
