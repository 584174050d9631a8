#pragma once

// Normal forms of morphism terms and oriented rewriting under a presentation.
// A normal form is a sorted multiset of paths; a path is a composite of
// generator occurrences written outermost first. The empty path is an
// identity and the empty sum is a zero morphism, so the category and monoid
// axioms hold by construction.

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prodsum/presentation.hpp"

namespace prodsum {

struct Atom {
  std::string name;
  std::optional<IndexExpr> index;
  std::string dom, cod;

  std::string str() const { return index ? name + "[" + index->str() + "]" : name; }
  friend auto operator<=>(const Atom& a, const Atom& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.index <=> b.index;
  }
  friend bool operator==(const Atom& a, const Atom& b) { return a.name == b.name && a.index == b.index; }
};

struct Path {
  std::vector<Atom> atoms;  // outermost first
  std::string dom, cod;

  bool is_identity() const { return atoms.empty(); }
  std::string str() const {
    if (atoms.empty()) return "id(" + dom + ")";
    std::string s;
    for (std::size_t i = 0; i < atoms.size(); ++i) s += (i ? "." : "") + atoms[i].str();
    return s;
  }
  friend auto operator<=>(const Path& a, const Path& b) {
    if (auto c = a.atoms <=> b.atoms; c != 0) return c;
    return a.dom <=> b.dom;
  }
  friend bool operator==(const Path& a, const Path& b) { return a.atoms == b.atoms && a.dom == b.dom; }
};

/// outer∘inner on paths
inline Path concat(const Path& outer, const Path& inner) {
  Path p{outer.atoms, inner.dom, outer.cod};
  p.atoms.insert(p.atoms.end(), inner.atoms.begin(), inner.atoms.end());
  return p;
}

struct NormalForm {
  std::vector<Path> terms;  // sorted; empty = zero
  std::string dom, cod;

  bool is_zero() const { return terms.empty(); }
  std::string str() const {
    if (terms.empty()) return "zero(" + dom + "," + cod + ")";
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? " + " : "") + terms[i].str();
    return s;
  }
  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

inline void canonicalize(NormalForm& nf, bool idempotent) {
  std::sort(nf.terms.begin(), nf.terms.end());
  if (idempotent) nf.terms.erase(std::unique(nf.terms.begin(), nf.terms.end()), nf.terms.end());
}

/// Flattens a term using associativity, unit and zero laws and bilinearity.
inline NormalForm to_normal_form(const MorTerm& t, bool idempotent = false) {
  using K = MorTerm::Kind;
  NormalForm nf{{}, t.dom(), t.cod()};
  switch (t.kind()) {
    case K::gen:
      nf.terms.push_back(Path{{Atom{t.name(), t.index(), t.dom(), t.cod()}}, t.dom(), t.cod()});
      break;
    case K::id:
      nf.terms.push_back(Path{{}, t.dom(), t.cod()});
      break;
    case K::zero:
      break;
    case K::comp: {
      auto a = to_normal_form(t.first(), idempotent);
      auto b = to_normal_form(t.second(), idempotent);
      for (const auto& x : a.terms)
        for (const auto& y : b.terms) nf.terms.push_back(concat(x, y));
      break;
    }
    case K::add: {
      auto a = to_normal_form(t.first(), idempotent);
      auto b = to_normal_form(t.second(), idempotent);
      nf.terms = a.terms;
      nf.terms.insert(nf.terms.end(), b.terms.begin(), b.terms.end());
      break;
    }
  }
  canonicalize(nf, idempotent);
  return nf;
}

inline MorTerm path_to_term(const Path& p) {
  if (p.atoms.empty()) return MorTerm::identity(p.dom);
  std::vector<MorTerm> chain;
  for (const auto& a : p.atoms) chain.push_back(MorTerm::gen(a.name, a.dom, a.cod, a.index));
  return compose_all(chain);
}

inline MorTerm to_term(const NormalForm& nf) {
  if (nf.terms.empty()) return MorTerm::zero(nf.dom, nf.cod);
  MorTerm t = path_to_term(nf.terms[0]);
  for (std::size_t i = 1; i < nf.terms.size(); ++i) t = add_mor(t, path_to_term(nf.terms[i]));
  return t;
}

// ---------------------------------------------------------------------------
// Index reasoning

/// Disequalities x != y between index variables of a goal (stored sorted).
using Constraints = std::set<std::pair<std::string, std::string>>;

inline std::pair<std::string, std::string> neq(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {a, b};
}

/// A case distinction the engine may introduce on a goal variable.
struct Split {
  enum class Kind { parity, zero_succ, delta };
  Kind kind;
  std::string var, other;  // other: only for delta

  std::string str() const {
    switch (kind) {
      case Kind::parity: return "parity(" + var + ")";
      case Kind::zero_succ: return "zero/succ(" + var + ")";
      case Kind::delta: return "delta(" + var + "," + other + ")";
    }
    return {};
  }
  friend bool operator==(const Split&, const Split&) = default;
};

enum class DeltaValue { equal, distinct, undecided };

/// Decides i = j over the naturals for indices in the a·n+b language, using
/// recorded disequalities. An undecided answer may suggest a split.
inline DeltaValue decide_delta(const IndexExpr& i, const IndexExpr& j, const Constraints& cs,
                               std::optional<Split>* hint = nullptr) {
  auto suggest = [&](Split s) {
    if (hint) *hint = std::move(s);
    return DeltaValue::undecided;
  };
  if (i == j) return DeltaValue::equal;
  if (i.is_literal() && j.is_literal()) return DeltaValue::distinct;
  if (i.is_literal() || j.is_literal()) {
    const IndexExpr& lit = i.is_literal() ? i : j;
    const IndexExpr& v = i.is_literal() ? j : i;
    long l = lit.value();
    if (l < v.offset()) return DeltaValue::distinct;
    if (v.coeff() == 2 && (l % 2) != v.offset()) return DeltaValue::distinct;
    if (v.coeff() == 1 && v.offset() == 0) return suggest({Split::Kind::zero_succ, v.var(), {}});
    return DeltaValue::undecided;
  }
  if (i.coeff() == 2 && j.coeff() == 2 && i.offset() != j.offset()) return DeltaValue::distinct;
  if (i.var() == j.var()) {
    if (i.coeff() == j.coeff()) return DeltaValue::distinct;  // offsets differ
    const IndexExpr& one = i.coeff() == 1 ? i : j;
    return suggest({Split::Kind::parity, one.var(), {}});
  }
  if (i.coeff() == j.coeff() && i.offset() == j.offset()) {
    if (cs.count(neq(i.var(), j.var()))) return DeltaValue::distinct;
    return suggest({Split::Kind::delta, std::min(i.var(), j.var()), std::max(i.var(), j.var())});
  }
  if (i.coeff() != j.coeff()) {
    const IndexExpr& one = i.coeff() == 1 ? i : j;
    return suggest({Split::Kind::parity, one.var(), {}});
  }
  return DeltaValue::undecided;
}

using Bindings = std::map<std::string, IndexExpr>;

/// Matches a rule index pattern against a goal index, extending `b`. When the
/// match fails only because a goal variable is too general, `hint` receives
/// the case split that would decide it.
inline bool match_index(const IndexExpr& pat, const IndexExpr& t, Bindings& b,
                        std::optional<Split>& hint) {
  if (pat.is_literal()) {
    if (t.is_literal()) return t.value() == pat.value();
    if (t.coeff() == 1 && t.offset() == 0) hint = Split{Split::Kind::zero_succ, t.var(), {}};
    return false;
  }
  if (auto it = b.find(pat.var()); it != b.end()) {
    auto inst = pat.try_substitute(b);
    return inst && *inst == t;
  }
  const long a = pat.coeff(), off = pat.offset();
  if (t.is_literal()) {
    long v = t.value() - off;
    if (v < 0 || v % a != 0) return false;
    b.emplace(pat.var(), IndexExpr::literal(v / a));
    return true;
  }
  if (a == 1 && off == 0) {
    b.emplace(pat.var(), t);
    return true;
  }
  if (a == 1 && off == 1) {
    if (t.offset() == 1) {
      b.emplace(pat.var(), IndexExpr::variable(t.var(), t.coeff(), 0));
      return true;
    }
    if (t.coeff() == 1) hint = Split{Split::Kind::zero_succ, t.var(), {}};
    return false;
  }
  // a == 2
  if (t.coeff() == 2) {
    if (t.offset() != off) return false;
    b.emplace(pat.var(), IndexExpr::variable(t.var()));
    return true;
  }
  if (t.offset() == 0) hint = Split{Split::Kind::parity, t.var(), {}};
  return false;
}

// ---------------------------------------------------------------------------
// Rules

struct Rule {
  std::string label;
  int clause = 0;                   // position within its label group
  std::vector<Path> lhs;            // one path, or several for a sum rule
  NormalForm rhs;
  std::optional<DeltaCondition> delta;
  std::string dom, cod;

  std::string id() const { return label + "#" + std::to_string(clause); }
  bool is_sum() const { return lhs.size() != 1; }
};

/// Orients a relation left to right. Relations whose left side is zero or a
/// bare identity cannot be used as rewrite rules.
inline Rule compile_rule(const std::string& label, int clause, const MorTerm& lhs, const MorTerm& rhs,
                         const std::optional<DeltaCondition>& delta) {
  Rule r;
  r.label = label;
  r.clause = clause;
  auto l = to_normal_form(lhs);
  if (l.terms.empty()) throw InvalidMorphism("relation " + label + " has a zero left side");
  if (l.terms.size() == 1 && l.terms[0].is_identity())
    throw InvalidMorphism("relation " + label + " has an identity left side");
  r.lhs = l.terms;
  r.rhs = to_normal_form(rhs);
  r.delta = delta;
  r.dom = lhs.dom();
  r.cod = lhs.cod();
  std::set<std::string> lvars = lhs.vars();
  auto bad = [&](const std::set<std::string>& vs) {
    for (const auto& v : vs)
      if (!lvars.count(v)) throw IndexLanguageError("relation " + label + ": variable " + v + " not bound by the left side");
  };
  bad(rhs.vars());
  if (delta) {
    if (!delta->i.is_literal()) bad({delta->i.var()});
    if (!delta->j.is_literal()) bad({delta->j.var()});
  }
  return r;
}

struct RuleSet {
  std::vector<Rule> rules;
  bool idempotent = false;

  static RuleSet from(const Presentation& p) {
    RuleSet rs;
    std::map<std::string, int> clause;
    for (const auto& rel : p.relations)
      rs.rules.push_back(compile_rule(rel.label, clause[rel.label]++, rel.lhs, rel.rhs, rel.delta));
    rs.idempotent = p.has_flag("idempotent_homs");
    return rs;
  }

  /// Only the relations whose label is listed, in the listed order.
  static RuleSet from(const Presentation& p, const std::vector<std::string>& labels) {
    RuleSet all = from(p);
    RuleSet rs;
    rs.idempotent = all.idempotent;
    for (const auto& l : labels) {
      bool found = false;
      for (const auto& r : all.rules)
        if (r.label == l) {
          rs.rules.push_back(r);
          found = true;
        }
      if (!found) throw UnknownSymbol("no relation labelled " + l);
    }
    return rs;
  }

  void add(const std::string& label, const MorTerm& lhs, const MorTerm& rhs) {
    int clause = 0;
    for (const auto& r : rules) clause += r.label == label;
    rules.push_back(compile_rule(label, clause, lhs, rhs, std::nullopt));
  }

  const Rule* find(const std::string& id) const {
    for (const auto& r : rules)
      if (r.id() == id) return &r;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Single rewrite steps

/// Where a rule fired: for a path rule, `terms` has one entry and `offset`
/// is the atom position; for a sum rule, `terms` lists the matched summands
/// (one per left-side path) and `offset`/`suffix` give the shared context.
struct StepPos {
  std::vector<std::size_t> terms;
  std::size_t offset = 0;
  std::size_t suffix = 0;

  std::string str() const {
    std::string s = "t";
    for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? "," : "") + std::to_string(terms[i]);
    s += "@" + std::to_string(offset);
    if (terms.size() > 1 || suffix) s += "/" + std::to_string(suffix);
    return s;
  }
  friend bool operator==(const StepPos&, const StepPos&) = default;
};

struct Step {
  std::string rule;  // Rule::id()
  StepPos pos;
};

/// Context shared by one normalization: disequalities, the budget and the
/// case splits that would have let a blocked rule fire.
struct RewriteContext {
  const Constraints* constraints = nullptr;
  std::uint64_t* budget = nullptr;
  std::vector<Split>* hints = nullptr;

  void hint(const std::optional<Split>& s) const {
    if (s && hints && std::find(hints->begin(), hints->end(), *s) == hints->end()) hints->push_back(*s);
  }
};

namespace detail {

inline bool match_atoms(const std::vector<Atom>& pat, std::size_t pbeg, std::size_t plen,
                        const std::vector<Atom>& term, std::size_t tbeg, Bindings& b,
                        const RewriteContext& ctx) {
  for (std::size_t k = 0; k < plen; ++k) {
    const Atom& p = pat[pbeg + k];
    const Atom& t = term[tbeg + k];
    if (p.name != t.name || p.index.has_value() != t.index.has_value()) return false;
    if (p.index) {
      std::optional<Split> h;
      if (!match_index(*p.index, *t.index, b, h)) {
        ctx.hint(h);
        return false;
      }
    }
  }
  return true;
}

/// Instantiates the rule's right side (or zero, if the delta condition is
/// decided false). Returns nullopt when the rule must not fire.
inline std::optional<std::vector<Path>> instantiate(const Rule& r, const Bindings& b,
                                                    const RewriteContext& ctx) {
  if (r.delta) {
    auto i = r.delta->i.try_substitute(b);
    auto j = r.delta->j.try_substitute(b);
    if (!i || !j) return std::nullopt;
    static const Constraints none;
    std::optional<Split> h;
    auto d = decide_delta(*i, *j, ctx.constraints ? *ctx.constraints : none, &h);
    if (d == DeltaValue::undecided) {
      ctx.hint(h);
      return std::nullopt;
    }
    if (d == DeltaValue::distinct) return std::vector<Path>{};
  }
  std::vector<Path> out;
  for (const auto& p : r.rhs.terms) {
    Path q = p;
    for (auto& a : q.atoms)
      if (a.index) {
        auto s = a.index->try_substitute(b);
        if (!s) return std::nullopt;
        a.index = *s;
      }
    out.push_back(std::move(q));
  }
  return out;
}

inline Path slice(const Path& p, std::size_t from, std::size_t to, const std::string& dom,
                  const std::string& cod) {
  return Path{{p.atoms.begin() + static_cast<long>(from), p.atoms.begin() + static_cast<long>(to)}, dom, cod};
}

// dom of the sub-path atoms[from, ...) seen from the outside
inline std::string dom_after(const Path& p, std::size_t from) {
  return from == 0 ? p.cod : p.atoms[from - 1].dom;
}

/// Tries a path rule at (term, offset); on success writes the new summands.
inline bool try_path_rule(const Rule& r, const Path& term, std::size_t offset, const RewriteContext& ctx,
                          std::vector<Path>& replacement) {
  const auto& pat = r.lhs[0].atoms;
  if (offset + pat.size() > term.atoms.size()) return false;
  Bindings b;
  if (!match_atoms(pat, 0, pat.size(), term.atoms, offset, b, ctx)) return false;
  auto rhs = instantiate(r, b, ctx);
  if (!rhs) return false;
  const std::size_t end = offset + pat.size();
  Path pre = slice(term, 0, offset, dom_after(term, offset), term.cod);
  Path suf = slice(term, end, term.atoms.size(), term.dom, dom_after(term, end));
  replacement.clear();
  for (const auto& mid : *rhs) replacement.push_back(concat(concat(pre, mid), suf));
  return true;
}

/// Tries a sum rule: picks summands pre·L_k·suf for every left path L_k with a
/// common prefix (of length `offset`) and suffix taken from the first match.
inline bool try_sum_rule(const Rule& r, const std::vector<Path>& terms, std::size_t first,
                         std::size_t offset, std::size_t suffix, const RewriteContext& ctx,
                         std::vector<std::size_t>& used, std::vector<Path>& replacement) {
  const Path& t0 = terms[first];
  const auto& l0 = r.lhs[0].atoms;
  if (offset + l0.size() + suffix != t0.atoms.size()) return false;
  Bindings b;
  if (!match_atoms(l0, 0, l0.size(), t0.atoms, offset, b, ctx)) return false;
  std::vector<Atom> pre(t0.atoms.begin(), t0.atoms.begin() + static_cast<long>(offset));
  std::vector<Atom> suf(t0.atoms.end() - static_cast<long>(suffix), t0.atoms.end());
  used.assign(1, first);
  for (std::size_t k = 1; k < r.lhs.size(); ++k) {
    const auto& lk = r.lhs[k].atoms;
    bool found = false;
    for (std::size_t t = 0; t < terms.size() && !found; ++t) {
      if (std::find(used.begin(), used.end(), t) != used.end()) continue;
      const auto& ta = terms[t].atoms;
      if (ta.size() != pre.size() + lk.size() + suf.size()) continue;
      if (terms[t].dom != t0.dom || terms[t].cod != t0.cod) continue;
      if (!std::equal(pre.begin(), pre.end(), ta.begin())) continue;
      if (!std::equal(suf.begin(), suf.end(), ta.end() - static_cast<long>(suf.size()))) continue;
      Bindings trial = b;
      if (!match_atoms(lk, 0, lk.size(), ta, pre.size(), trial, ctx)) continue;
      // identity summands must sit at the same object as the others
      if (lk.empty() && dom_after(terms[t], pre.size()) != r.cod) continue;
      b = std::move(trial);
      used.push_back(t);
      found = true;
    }
    if (!found) return false;
  }
  auto rhs = instantiate(r, b, ctx);
  if (!rhs) return false;
  Path p{pre, r.cod, t0.cod};
  Path s{suf, t0.dom, r.dom};
  replacement.clear();
  for (const auto& mid : *rhs) replacement.push_back(concat(concat(p, mid), s));
  return true;
}

inline void charge(const RewriteContext& ctx) {
  if (!ctx.budget) return;
  if (*ctx.budget == 0) throw BudgetExhausted("rewrite step budget exhausted");
  --*ctx.budget;
}

inline void replace_terms(NormalForm& nf, std::vector<std::size_t> idx, std::vector<Path> repl,
                          bool idempotent) {
  std::sort(idx.begin(), idx.end(), std::greater<>());
  for (auto i : idx) nf.terms.erase(nf.terms.begin() + static_cast<long>(i));
  nf.terms.insert(nf.terms.end(), repl.begin(), repl.end());
  canonicalize(nf, idempotent);
}

}  // namespace detail

/// Finds the first applicable rule (rule order, then summand order, then
/// position) and applies it. Returns the step taken, if any.
inline std::optional<Step> rewrite_once(NormalForm& nf, const RuleSet& rs, const RewriteContext& ctx) {
  std::vector<Path> repl;
  std::vector<std::size_t> used;
  for (const auto& r : rs.rules) {
    for (std::size_t t = 0; t < nf.terms.size(); ++t) {
      const Path& term = nf.terms[t];
      if (!r.is_sum()) {
        for (std::size_t off = 0; off + r.lhs[0].atoms.size() <= term.atoms.size(); ++off)
          if (detail::try_path_rule(r, term, off, ctx, repl)) {
            detail::charge(ctx);
            Step s{r.id(), StepPos{{t}, off, 0}};
            detail::replace_terms(nf, {t}, repl, rs.idempotent);
            return s;
          }
        continue;
      }
      const std::size_t l0 = r.lhs[0].atoms.size();
      if (term.atoms.size() < l0) continue;
      for (std::size_t off = 0; off + l0 <= term.atoms.size(); ++off) {
        std::size_t suffix = term.atoms.size() - l0 - off;
        if (l0 == 0 && detail::dom_after(term, off) != r.cod) continue;
        if (detail::try_sum_rule(r, nf.terms, t, off, suffix, ctx, used, repl)) {
          detail::charge(ctx);
          Step s{r.id(), StepPos{used, off, suffix}};
          detail::replace_terms(nf, used, repl, rs.idempotent);
          return s;
        }
      }
    }
  }
  return std::nullopt;
}

/// Re-applies a recorded step exactly where it was taken. Throws if the rule
/// does not match there.
inline void apply_step(NormalForm& nf, const RuleSet& rs, const Step& s, const Constraints& cs) {
  const Rule* r = rs.find(s.rule);
  if (!r) throw UnknownSymbol("replay: unknown rule " + s.rule);
  RewriteContext ctx{&cs, nullptr, nullptr};
  std::vector<Path> repl;
  std::vector<std::size_t> used;
  for (auto t : s.pos.terms)
    if (t >= nf.terms.size()) throw InvalidMorphism("replay: summand index out of range");
  bool ok = false;
  if (!r->is_sum()) {
    ok = detail::try_path_rule(*r, nf.terms[s.pos.terms[0]], s.pos.offset, ctx, repl);
    used = s.pos.terms;
  } else {
    ok = detail::try_sum_rule(*r, nf.terms, s.pos.terms[0], s.pos.offset, s.pos.suffix, ctx, used, repl) &&
         used == s.pos.terms;
  }
  if (!ok) throw InvalidMorphism("replay: rule " + s.rule + " does not apply at " + s.pos.str());
  detail::replace_terms(nf, used, repl, rs.idempotent);
}

}  // namespace prodsum
