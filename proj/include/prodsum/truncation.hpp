#pragma once

// Desk-scale instantiation of the swindle presentation in finite abelian
// groups: ℕ is cut down to {0, …, N-1}, A = ℤ/a, A^ℕ and A^(ℕ) both become
// A^N, and every generator is the matrix forced by its defining relations
// wherever the indices stay in range.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "prodsum/finab.hpp"
#include "prodsum/model.hpp"
#include "prodsum/swindle.hpp"

namespace prodsum {

class Truncation {
 public:
  Truncation(const Presentation& pres, long N, long a) : pres_(pres), N_(N), a_(a) {
    if (N < 1) throw ShapeMismatch("truncation needs N >= 1");
    if (a < 2) throw InvalidObject("base group Z/a needs a >= 2");
  }

  long N() const { return N_; }
  long a() const { return a_; }
  const FinAbModel& model() const { return m_; }

  FinAbObject object(const std::string& name) const {
    static const std::map<std::string, int> rank_in_N{{"P", 1}, {"Q", 1}, {"P2", 2}, {"Q2", 2}};
    if (name == "A") return rep(1);
    if (name == "AA") return rep(2);
    if (name == "AP" || name == "AQ") return rep(1 + N_);
    if (auto it = rank_in_N.find(name); it != rank_in_N.end()) return rep(it->second * N_);
    if (pres_.find_object(name)) return rep(1);  // the source object of f
    throw UnknownSymbol("no truncated object for " + name);
  }

  FinAbMorphism generator(const std::string& name, std::optional<long> idx) const {
    const long N = N_;
    auto in_range = [&](long i, long bound) {
      if (i < 0 || i >= bound) throw ShapeMismatch(name + "[" + std::to_string(i) + "] outside the truncation");
      return i;
    };
    auto k = [&] { return in_range(idx.value(), 2); };
    auto n = [&] { return in_range(idx.value(), N); };
    const auto* decl = pres_.find_generator(name);
    if (!decl) throw UnknownSymbol("unknown generator " + name);
    auto [d, c] = idx ? decl->type_at(IndexExpr::literal(*idx)) : std::pair{decl->dom, decl->cod};
    // entry(row of cod, column of dom)
    auto mat = [&](const std::function<bool(long, long)>& one) {
      auto X = object(d), Y = object(c);
      std::vector<long> e(X.rank() * Y.rank(), 0);
      for (std::size_t j = 0; j < Y.rank(); ++j)
        for (std::size_t i = 0; i < X.rank(); ++i) e[j * X.rank() + i] = one(static_cast<long>(j), static_cast<long>(i));
      return FinAbMorphism(X, Y, std::move(e));
    };
    if (name == "p") { long m = n(); return mat([&](long, long i) { return i == m; }); }
    if (name == "sigma") { long m = n(); return mat([&](long j, long) { return j == m; }); }
    if (name == "r") { long q = k(); return mat([&](long j, long i) { return i == q * N + j; }); }
    if (name == "s") { long q = k(); return mat([&](long j, long i) { return j == q * N + i; }); }
    if (name == "a" || name == "b") { long q = k(); return mat([&](long j, long i) { return name == "a" ? i == q : j == q; }); }
    if (name == "x" || name == "z") {
      long q = k();
      return mat([&](long j, long i) { return q == 0 ? i == 0 : i == 1 + j; });
    }
    if (name == "y" || name == "w") {
      long q = k();
      return mat([&](long j, long i) { return q == 0 ? j == 0 : j == 1 + i; });
    }
    if (name == "eta") return mat([&](long j, long i) { return j % N == i; });
    if (name == "eps") return mat([&](long j, long i) { return i % N == j; });
    if (name == "Sigma" || name == "Pi" || name == "eta'" || name == "eps'") return mat([](long, long) { return true; });
    if (name == "u") return mat([&](long j, long i) { return j == (i % 2) * N + i / 2; });
    if (name == "v") return mat([&](long j, long i) { return i == (j % 2) * N + j / 2; });
    if (name == "v'") return mat([&](long j, long i) { return i == 2 * (j % N) + j / N; });
    if (name == "u'") return mat([&](long j, long i) { return j == 2 * (i % N) + i / N; });
    if (name == "Lambda" || name == "Gamma" || name == "LL") return mat([](long j, long i) { return i == j; });
    if (name == "g") return mat([](long j, long i) { return i == j; });   // p_0 g = x_0, p_{n+1} g = p_n x_1
    if (name == "g'") return mat([](long j, long i) { return i == j; });  // x_0 g' = p_0, p_n x_1 g' = p_{n+1}
    if (name == "h" || name == "h'") return mat([](long j, long i) { return i == j; });
    if (name == "f") return m_.identity(object(d));
    if (name == "fneg") return m_.negate(m_.identity(object(d)));
    // maps introduced by a defining relation `name = rhs`
    for (const auto& rel : pres_.relations)
      if (rel.lhs.kind() == MorTerm::Kind::gen && rel.lhs.name() == name && !rel.delta)
        return evaluate(m_, rel.rhs, interpretation());
    throw ModelUnsupported("no truncated interpretation for " + name);
  }

  Interpretation<FinAbModel> interpretation() const {
    return {[this](const std::string& o) { return object(o); },
            [this](const std::string& g, std::optional<long> i) { return generator(g, i); }};
  }

  FinAbMorphism eval(const MorTerm& t) const { return evaluate(m_, t, interpretation()); }

  bool holds(const MorTerm& lhs, const MorTerm& rhs) const { return m_.equal(eval(lhs), eval(rhs)); }

  /// Checks every relation at every assignment of its index variables that
  /// keeps all indices inside the truncation.
  Report check_relations() const {
    Report rep;
    rep.name = "truncated_relations";
    rep.mode = "exhaustive";
    for (const auto& rel : pres_.relations) {
      auto vars = rel.index_vars();
      std::vector<std::string> vs(vars.begin(), vars.end());
      std::map<std::string, long> env;
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i < vs.size()) {
          for (long val = 0; val < N_; ++val) {
            env[vs[i]] = val;
            rec(i + 1);
          }
          return;
        }
        FinAbMorphism l, r;
        try {
          l = evaluate(m_, rel.lhs, interpretation(), env);
          r = evaluate(m_, rel.rhs, interpretation(), env);
        } catch (const ShapeMismatch&) {
          return;  // an index left {0..N-1}
        }
        if (rel.delta && rel.delta->i.evaluate(env) != rel.delta->j.evaluate(env)) r = m_.zero(l.dom(), l.cod());
        ++rep.checks;
        if (!m_.equal(l, r)) {
          std::string at;
          for (const auto& [k, v] : env) at += " " + k + "=" + std::to_string(v);
          rep.fail(rel.label + ":" + at);
        }
      };
      rec(0);
    }
    return rep;
  }

 private:
  FinAbObject rep(long k) const { return FinAbObject(std::vector<long>(static_cast<std::size_t>(k), a_)); }

  const Presentation& pres_;
  long N_, a_;
  FinAbModel m_;
};

/// Every identity the chase proves for the presentation, with its name.
inline std::vector<NamedGoal> proved_identities(const Presentation& P, const ChaseOptions& opt = {}) {
  std::vector<NamedGoal> out;
  auto rs = RuleSet::from(P);
  for (const auto& g : panel_goals(P))
    if (run_goal(g, P, rs, opt).proof.proved()) out.push_back(g);
  for (const auto& g : inverse_goals(P))
    if (run_goal(g, P, rs, opt).proof.proved()) out.push_back(g);
  if (P.find_generator("Gamma")) {
    auto k = derive_key_identities(P, opt);
    for (const auto& l : k.book.lemmas) {
      bool dup = std::any_of(out.begin(), out.end(), [&](const NamedGoal& g) {
        return MorTerm::same_syntax(g.lhs, l.lhs) && MorTerm::same_syntax(g.rhs, l.rhs);
      });
      if (!dup) out.push_back({l.name, l.lhs, l.rhs});
    }
  }
  if (P.find_generator("f") && P.find_generator("Gamma")) {
    auto v = no_invertible_verdict(P, opt);
    const auto& X = P.find_generator("f")->dom;
    auto sgp = compose_all({P.gen("Sigma"), P.gen("Gamma"), P.gen("Pi")});
    if (v.trace[0].result.proved()) out.push_back({"f'=0", compose(sgp, P.gen("f")), P.zero(X, "A")});
    if (v.f_zero) out.push_back({"f=0", P.gen("f"), P.zero(X, "A")});
  }
  return out;
}

/// Evaluates every proved identity at each truncation size and base group.
inline Report truncation_cross_check(const Presentation& P, const std::vector<long>& sizes,
                                     const std::vector<long>& bases, const ChaseOptions& opt = {}) {
  Report rep;
  rep.name = "truncation_cross_check";
  rep.mode = "exhaustive";
  auto ids = proved_identities(P, opt);
  json rows = json::array();
  std::set<std::string> failing;
  for (long N : sizes)
    for (long a : bases) {
      Truncation t(P, N, a);
      rep.absorb(t.check_relations());
      json bad = json::array();
      for (const auto& g : ids) {
        ++rep.checks;
        if (!t.holds(g.lhs, g.rhs)) {
          bad.push_back(g.name);
          failing.insert(g.name);
        }
      }
      rows.push_back({{"N", N}, {"a", a}, {"identities", ids.size()}, {"failing", bad}});
    }
  json names = json::array();
  for (const auto& g : ids) names.push_back(g.name);
  rep.data["identities"] = names;
  rep.data["runs"] = rows;
  if (!failing.empty()) {
    std::string list;
    for (const auto& f : failing) list += (list.empty() ? "" : ", ") + f;
    rep.fail("identities false at finite truncation: " + list);
  }
  return rep;
}

}  // namespace prodsum
