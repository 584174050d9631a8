#pragma once

// Text format for presentations:
//
//   object A;                                  object Z = zero;
//   object P = product(A[n]) via p;            object AA = coproduct(A, A) via b;
//   mor Lambda : Q -> P;                       mor t[n] : A -> A;
//   rel e9: p[n].Lambda.sigma[m] = id(A) when delta(n,m);
//   hypothesis lambda_is_iso;
//   model finab A = Z/2, N = 4;
//   goal panel: v.eta = id(P);
//
// Labels on rel and goal are optional. Composition binds tighter than +,
// parentheses group, and `#` or `//` start a comment.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "prodsum/presentation.hpp"

namespace prodsum {

struct SpecGoal {
  std::string name;
  MorTerm lhs, rhs;
};

struct SpecFile {
  Presentation pres;
  std::vector<SpecGoal> goals;
};

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(const std::string& text) : s_(text) {}

  SpecFile parse() {
    SpecFile out;
    for (skip(); !at_end(); skip()) declaration(out);
    return out;
  }

 private:
  struct Pos {
    int line, col;
  };

  // ---- characters ----
  bool at_end() const { return i_ >= s_.size(); }
  char peek(std::size_t k = 0) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }
  Pos pos() const { return {line_, col_}; }

  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(s_[i_]) & 0xC0) != 0x80) {
      ++col_;  // count code points, not bytes
    }
    ++i_;
  }

  void skip() {
    for (;;) {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '#' || (peek() == '/' && peek(1) == '/')) {
        while (!at_end() && peek() != '\n') advance();
        continue;
      }
      return;
    }
  }

  [[noreturn]] void fail(const std::string& expected) const { fail_at(pos(), expected); }
  [[noreturn]] static void fail_at(Pos p, const std::string& expected) { throw ParseError(p.line, p.col, expected); }

  static bool id_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool id_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

  // ---- tokens ----
  bool peek_ident() {
    skip();
    return id_start(peek());
  }

  std::string ident(const std::string& what = "identifier") {
    skip();
    if (!id_start(peek())) fail(what);
    std::string r;
    while (id_char(peek())) {
      r += peek();
      advance();
    }
    return r;
  }

  bool peek_word(const std::string& w) {
    skip();
    if (s_.compare(i_, w.size(), w) != 0) return false;
    return !id_char(peek(w.size()));
  }

  void word(const std::string& w) {
    if (!peek_word(w)) fail("'" + w + "'");
    for (std::size_t k = 0; k < w.size(); ++k) advance();
  }

  bool peek_sym(const std::string& sym) {
    skip();
    return s_.compare(i_, sym.size(), sym) == 0;
  }

  bool accept(const std::string& sym) {
    if (!peek_sym(sym)) return false;
    for (std::size_t k = 0; k < sym.size(); ++k) advance();
    return true;
  }

  void expect(const std::string& sym) {
    if (!accept(sym)) fail("'" + sym + "'");
  }

  long natural() {
    skip();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("natural number");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      advance();
    }
    return v;
  }

  // ---- declarations ----
  void declaration(SpecFile& out) {
    Pos at = pos();
    if (!peek_ident()) fail("declaration keyword");
    std::string kw = ident();
    if (kw == "object") object_decl(out.pres);
    else if (kw == "mor") mor_decl(out.pres);
    else if (kw == "rel") rel_decl(out.pres);
    else if (kw == "model") model_decl(out.pres);
    else if (kw == "hypothesis") {
      out.pres.flags.push_back(ident("hypothesis flag"));
      expect(";");
    } else if (kw == "goal") goal_decl(out);
    else fail_at(at, "declaration keyword (object, mor, rel, model, hypothesis, goal)");
  }

  template <class F>
  auto semantic(Pos at, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail_at(at, "well-formed declaration (" + std::string(e.what()) + ")");
    }
  }

  void object_decl(Presentation& P) {
    Pos at = pos();
    std::string name = ident("object name");
    if (!accept("=")) {
      expect(";");
      semantic(at, [&] { P.add_object(ObjectRef::atomic(name)); });
      return;
    }
    if (peek_word("zero")) {
      word("zero");
      expect(";");
      semantic(at, [&] { P.add_object(ObjectRef::zero(name)); });
      return;
    }
    bool product = peek_word("product");
    if (!product && !peek_word("coproduct")) fail("'product', 'coproduct' or 'zero'");
    word(product ? "product" : "coproduct");
    expect("(");
    std::vector<std::string> parts;
    bool indexed = false;
    Pos part_at = pos();
    parts.push_back(ident("object name"));
    if (accept("[")) {
      ident("index variable");
      expect("]");
      indexed = true;
    } else {
      while (accept(",")) parts.push_back(ident("object name"));
    }
    expect(")");
    word("via");
    std::string family = ident("family name");
    expect(";");
    semantic(part_at, [&] {
      if (!P.has_object(name)) P.add_object(ObjectRef::atomic(name));
      if (product) P.declare_product(name, parts, indexed, family);
      else P.declare_coproduct(name, parts, indexed, family);
    });
  }

  void mor_decl(Presentation& P) {
    Pos at = pos();
    std::string name = ident("generator name");
    bool indexed = false;
    if (accept("[")) {
      ident("index variable");
      expect("]");
      indexed = true;
    }
    expect(":");
    std::string d = ident("domain object");
    expect("->");
    std::string c = ident("codomain object");
    expect(";");
    semantic(at, [&] { P.add_generator(name, d, c, indexed); });
  }

  /// A word directly followed by ':' is a label; labels may contain '.', '-'
  /// and primes, since terms never contain ':'.
  std::optional<std::string> label() {
    skip();
    std::size_t save = i_;
    int l = line_, c = col_;
    std::string name;
    while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ':' && peek() != ';') {
      name += peek();
      advance();
    }
    if (!name.empty() && peek() == ':') {
      advance();
      return name;
    }
    i_ = save, line_ = l, col_ = c;
    return std::nullopt;
  }

  void rel_decl(Presentation& P) {
    auto lab = label();
    Pos at = pos();
    MorTerm lhs = term(P);
    expect("=");
    MorTerm rhs = term(P);
    std::optional<DeltaCondition> delta;
    if (peek_word("when")) {
      word("when");
      word("delta");
      expect("(");
      IndexExpr a = index();
      expect(",");
      IndexExpr b = index();
      expect(")");
      delta = DeltaCondition{a, b};
    }
    expect(";");
    std::string name = lab ? *lab : "r" + std::to_string(P.relations.size() + 1);
    semantic(at, [&] { P.add_relation(name, lhs, rhs, delta); });
  }

  void model_decl(Presentation& P) {
    skip();
    Pos at = pos();
    std::string m = ident("model name");
    if (m != "finab" && m != "lattice") fail_at(at, "model name (finab or lattice)");
    ModelBinding b{m, {}};
    do {
      std::string sym = ident("bound symbol");
      expect("=");
      skip();
      std::string lit;
      while (!at_end() && peek() != ',' && peek() != ';' && peek() != '\n') {
        lit += peek();
        advance();
      }
      while (!lit.empty() && std::isspace(static_cast<unsigned char>(lit.back()))) lit.pop_back();
      if (lit.empty()) fail("literal");
      b.assignments.emplace_back(sym, lit);
    } while (accept(","));
    expect(";");
    P.bindings.push_back(std::move(b));
  }

  void goal_decl(SpecFile& out) {
    auto lab = label();
    Pos at = pos();
    MorTerm lhs = term(out.pres);
    Pos eq = pos();
    expect("=");
    MorTerm rhs = term(out.pres);
    expect(";");
    if (lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod())
      fail_at(eq, "parallel sides (" + lhs.dom() + " -> " + lhs.cod() + " vs " + rhs.dom() + " -> " + rhs.cod() + ")");
    (void)at;
    out.goals.push_back({lab ? *lab : "goal" + std::to_string(out.goals.size() + 1), lhs, rhs});
  }

  // ---- terms ----
  IndexExpr index() {
    skip();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      long v = natural();
      if (v == 2 && id_start(peek())) {  // 2n, no space allowed
        std::string var = ident();
        return IndexExpr::variable(var, 2, plus_one());
      }
      return IndexExpr::literal(v);
    }
    std::string var = ident("index (NAT, n, 2n, n+1 or 2n+1)");
    return IndexExpr::variable(var, 1, plus_one());
  }

  int plus_one() {
    if (!accept("+")) return 0;
    skip();
    Pos at = pos();
    if (natural() != 1) fail_at(at, "'1'");
    return 1;
  }

  MorTerm term(const Presentation& P) {
    MorTerm t = product_term(P);
    for (;;) {
      Pos at = pos();
      if (!accept("+")) return t;
      MorTerm r = product_term(P);
      t = semantic(at, [&] { return add_mor(t, r); });
    }
  }

  MorTerm product_term(const Presentation& P) {
    MorTerm t = atom(P);
    for (;;) {
      skip();
      Pos at = pos();
      if (peek() != '.') return t;
      advance();
      MorTerm r = atom(P);
      t = semantic(at, [&] { return compose(t, r); });
    }
  }

  MorTerm atom(const Presentation& P) {
    skip();
    Pos at = pos();
    if (accept("(")) {
      MorTerm t = term(P);
      expect(")");
      return t;
    }
    std::string name = ident("term");
    if (name == "id" && peek_sym("(")) {
      expect("(");
      std::string o = ident("object name");
      expect(")");
      return semantic(at, [&] { return P.id(o); });
    }
    if (name == "zero" && peek_sym("(")) {
      expect("(");
      std::string d = ident("object name");
      expect(",");
      std::string c = ident("object name");
      expect(")");
      return semantic(at, [&] { return P.zero(d, c); });
    }
    if (accept("[")) {
      IndexExpr idx = index();
      expect("]");
      return semantic(at, [&] { return P.gen(name, idx); });
    }
    return semantic(at, [&] { return P.gen(name); });
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace detail

inline SpecFile parse_spec(const std::string& text) { return detail::SpecParser(text).parse(); }

inline std::string print_spec(const SpecFile& f) {
  const auto& P = f.pres;
  std::string out;
  std::vector<std::string> families;
  auto limit_line = [&](const LimitDecl& d, const char* kind) {
    std::string parts;
    if (d.indexed) parts = d.parts[0] + "[n]";
    else
      for (const auto& p : d.parts) parts += (parts.empty() ? "" : ", ") + p;
    out += "object " + d.object + " = " + kind + "(" + parts + ") via " + d.family + ";\n";
    families.push_back(d.family);
  };
  for (const auto& o : P.objects) {
    const auto* pr = P.product_of(o.name);
    const auto* co = P.coproduct_of(o.name);
    if (o.kind == ObjectRef::Kind::zero) out += "object " + o.name + " = zero;\n";
    else if (!pr && !co) out += "object " + o.name + ";\n";
    if (pr) limit_line(*pr, "product");
    if (co) limit_line(*co, "coproduct");
  }
  for (const auto& g : P.generators) {
    if (std::find(families.begin(), families.end(), g.name) != families.end()) continue;
    out += "mor " + g.name + (g.indexed ? "[n]" : "") + " : " + g.dom + " -> " + g.cod + ";\n";
  }
  for (const auto& r : P.relations) {
    out += "rel " + r.label + ": " + r.lhs.str() + " = " + r.rhs.str();
    if (r.delta) out += " when delta(" + r.delta->i.str() + "," + r.delta->j.str() + ")";
    out += ";\n";
  }
  for (const auto& fl : P.flags) out += "hypothesis " + fl + ";\n";
  for (const auto& b : P.bindings) {
    out += "model " + b.model;
    for (std::size_t k = 0; k < b.assignments.size(); ++k)
      out += (k ? ", " : " ") + b.assignments[k].first + " = " + b.assignments[k].second;
    out += ";\n";
  }
  for (const auto& g : f.goals) out += "goal " + g.name + ": " + g.lhs.str() + " = " + g.rhs.str() + ";\n";
  return out;
}

/// Terms compare by their printed form, which forgets only how composites
/// and sums were associated.
inline bool same_spec(const SpecFile& a, const SpecFile& b) {
  const auto &P = a.pres, &Q = b.pres;
  auto same_term = [](const MorTerm& x, const MorTerm& y) {
    return x.str() == y.str() && x.dom() == y.dom() && x.cod() == y.cod();
  };
  if (P.objects != Q.objects || P.generators != Q.generators || P.products != Q.products ||
      P.coproducts != Q.coproducts || P.flags != Q.flags || P.bindings != Q.bindings ||
      P.relations.size() != Q.relations.size() || a.goals.size() != b.goals.size())
    return false;
  for (std::size_t k = 0; k < P.relations.size(); ++k) {
    const auto &r = P.relations[k], &s = Q.relations[k];
    if (r.label != s.label || !same_term(r.lhs, s.lhs) || !same_term(r.rhs, s.rhs) || r.delta != s.delta) return false;
  }
  for (std::size_t k = 0; k < a.goals.size(); ++k)
    if (a.goals[k].name != b.goals[k].name || !same_term(a.goals[k].lhs, b.goals[k].lhs) ||
        !same_term(a.goals[k].rhs, b.goals[k].rhs))
      return false;
  return true;
}

}  // namespace prodsum
