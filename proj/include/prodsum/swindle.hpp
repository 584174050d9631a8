#pragma once

// The indexed swindle: a presentation over a base object A with A^ℕ, A^(ℕ),
// their binary biproducts and the comparison maps, plus the goals whose
// derivation shows that an invertible nonzero morphism cannot coexist with an
// invertible canonical map ⊕ → ∏ on a countable family.

#include <optional>
#include <string>
#include <vector>

#include "prodsum/chase.hpp"

namespace prodsum {

struct Hypothesis {
  bool lambda_is_iso = true;
  bool idempotent_homs = false;
  struct InvertibleF {
    std::string source = "X";
    bool nonzero = true;  // the claim f != 0 to be refuted
  };
  std::optional<InvertibleF> invertible_f;
};

/// Labels of the defining relations of the construction, in order.
inline const std::vector<std::string>& swindle_labels() {
  static const std::vector<std::string> l{"e1", "e2", "e3", "e4", "e5",  "e6", "e7", "e8",
                                          "e9", "e10", "e11", "e12", "g", "g'", "h", "h'"};
  return l;
}

/// The comparison maps of the two diagrams; finite families count once per member.
inline const std::vector<std::string>& swindle_generators() {
  static const std::vector<std::string> g{"eta", "eps", "Sigma", "Pi",  "sigma", "p",  "r[0]",
                                          "r[1]", "s[0]", "s[1]", "u",  "v",     "Lambda", "Gamma",
                                          "g",   "g'",  "h",    "h'",  "eta'",  "eps'"};
  return g;
}

inline Presentation build_swindle_presentation(const Hypothesis& hyp = {}) {
  Presentation P;
  for (const char* o : {"A", "P", "Q", "P2", "Q2", "AA", "AP", "AQ"}) P.add_object(ObjectRef::atomic(o));
  P.declare_product("P", {"A"}, true, "p");
  P.declare_coproduct("Q", {"A"}, true, "sigma");
  P.declare_product("P2", {"P", "P"}, false, "r");
  P.declare_coproduct("Q2", {"Q", "Q"}, false, "s");
  P.declare_product("AA", {"A", "A"}, false, "a");
  P.declare_coproduct("AA", {"A", "A"}, false, "b");
  P.declare_product("AP", {"A", "P"}, false, "x");
  P.declare_coproduct("AP", {"A", "P"}, false, "y");
  P.declare_product("AQ", {"A", "Q"}, false, "z");
  P.declare_coproduct("AQ", {"A", "Q"}, false, "w");

  const bool with_gamma = hyp.lambda_is_iso || hyp.idempotent_homs;
  P.add_generator("eta", "P", "P2");
  P.add_generator("eps", "Q2", "Q");
  P.add_generator("Sigma", "Q", "A");
  P.add_generator("Pi", "A", "P");
  P.add_generator("u", "Q", "Q2");
  P.add_generator("v", "P2", "P");
  P.add_generator("Lambda", "Q", "P");
  if (with_gamma) P.add_generator("Gamma", "P", "Q");
  P.add_generator("LL", "Q2", "P2");
  if (with_gamma) P.add_generator("GG", "P2", "Q2");
  P.add_generator("v'", "P", "P2");
  P.add_generator("u'", "Q2", "Q");
  P.add_generator("g", "AP", "P");
  P.add_generator("g'", "P", "AP");
  P.add_generator("h", "Q", "AQ");
  P.add_generator("h'", "AQ", "Q");
  P.add_generator("eta'", "A", "AA");
  P.add_generator("eps'", "AA", "A");
  P.add_generator("IS", "AQ", "AA");
  if (with_gamma) P.add_generator("IG", "AP", "AQ");
  P.add_generator("IP", "AA", "AP");
  P.add_generator("IL", "AQ", "AP");

  auto c = [&](std::initializer_list<MorTerm> ts) { return compose_all(ts); };
  auto g = [&](const std::string& n) { return P.gen(n); };
  auto gi = [&](const std::string& n, auto... idx) { return P.gen(n, idx...); };
  auto delta = [](IndexExpr i, IndexExpr j) { return DeltaCondition{std::move(i), std::move(j)}; };
  auto var = [](const std::string& v, int a = 1, int b = 0) { return IndexExpr::variable(v, a, b); };

  P.add_relation("e1", c({gi("r", 0L), g("eta")}), P.id("P"));
  P.add_relation("e1", c({gi("r", 1L), g("eta")}), P.id("P"));
  P.add_relation("e2", c({g("eps"), gi("s", 0L)}), P.id("Q"));
  P.add_relation("e2", c({g("eps"), gi("s", 1L)}), P.id("Q"));
  P.add_relation("e3", c({g("Sigma"), gi("sigma", "n")}), P.id("A"));
  P.add_relation("e4", c({gi("p", "n"), g("Pi")}), P.id("A"));
  P.add_relation("e5", c({g("u"), gi("sigma", "n", 2, 0)}), c({gi("s", 0L), gi("sigma", "n")}));
  P.add_relation("e6", c({g("u"), gi("sigma", "n", 2, 1)}), c({gi("s", 1L), gi("sigma", "n")}));
  P.add_relation("e7", c({gi("p", "n", 2, 0), g("v")}), c({gi("p", "n"), gi("r", 0L)}));
  P.add_relation("e8", c({gi("p", "n", 2, 1), g("v")}), c({gi("p", "n"), gi("r", 1L)}));
  P.add_relation("e9", c({gi("p", "n"), g("Lambda"), gi("sigma", "m")}), P.id("A"), delta(var("n"), var("m")));
  P.add_relation("e10", c({gi("r", "k"), g("LL"), gi("s", "l")}), g("Lambda"), delta(var("k"), var("l")));
  P.add_relation("e11", c({gi("p", "n"), gi("r", 0L), g("v'")}), gi("p", "n", 2, 0));
  P.add_relation("e12", c({gi("p", "n"), gi("r", 1L), g("v'")}), gi("p", "n", 2, 1));
  P.add_relation("g", c({gi("p", 0L), g("g")}), gi("x", 0L));
  P.add_relation("g", c({gi("p", "n", 1, 1), g("g")}), c({gi("p", "n"), gi("x", 1L)}));
  P.add_relation("g'", c({gi("x", 0L), g("g'")}), gi("p", 0L));
  P.add_relation("g'", c({gi("p", "n"), gi("x", 1L), g("g'")}), gi("p", "n", 1, 1));
  P.add_relation("h", c({g("h"), gi("sigma", 0L)}), gi("w", 0L));
  P.add_relation("h", c({g("h"), gi("sigma", "n", 1, 1)}), c({gi("w", 1L), gi("sigma", "n")}));
  P.add_relation("h'", c({g("h'"), gi("w", 0L)}), gi("sigma", 0L));
  P.add_relation("h'", c({g("h'"), gi("w", 1L), gi("sigma", "n")}), gi("sigma", "n", 1, 1));

  // structural helpers: inverse shuffles, componentwise maps, finite biproducts
  P.add_relation("u'", c({g("u'"), gi("s", 0L), gi("sigma", "n")}), gi("sigma", "n", 2, 0));
  P.add_relation("u'", c({g("u'"), gi("s", 1L), gi("sigma", "n")}), gi("sigma", "n", 2, 1));
  if (hyp.lambda_is_iso) {
    P.add_relation("Gamma", c({g("Gamma"), g("Lambda")}), P.id("Q"));
    P.add_relation("Gamma", c({g("Lambda"), g("Gamma")}), P.id("P"));
  }
  if (with_gamma)
    P.add_relation("GG", g("GG"),
                   add_mor(c({gi("s", 0L), g("Gamma"), gi("r", 0L)}), c({gi("s", 1L), g("Gamma"), gi("r", 1L)})));
  auto biproduct = [&](const std::string& label, const std::string& proj, const std::string& inj,
                       const std::string& o0, const std::string& o1) {
    const std::string objs[2] = {o0, o1};
    for (long k = 0; k < 2; ++k)
      for (long l = 0; l < 2; ++l) {
        auto lhs = c({gi(proj, k), gi(inj, l)});
        P.add_relation(label, lhs, k == l ? P.id(objs[k]) : P.zero(objs[l], objs[k]));
      }
  };
  biproduct("AA", "a", "b", "A", "A");
  biproduct("AP", "x", "y", "A", "P");
  biproduct("AQ", "z", "w", "A", "Q");
  P.add_relation("eta'", c({gi("a", 0L), g("eta'")}), P.id("A"));
  P.add_relation("eta'", c({gi("a", 1L), g("eta'")}), P.id("A"));
  P.add_relation("eps'", c({g("eps'"), gi("b", 0L)}), P.id("A"));
  P.add_relation("eps'", c({g("eps'"), gi("b", 1L)}), P.id("A"));
  P.add_relation("IS", g("IS"),
                 add_mor(c({gi("b", 0L), gi("z", 0L)}), c({gi("b", 1L), g("Sigma"), gi("z", 1L)})));
  if (with_gamma)
    P.add_relation("IG", g("IG"),
                   add_mor(c({gi("w", 0L), gi("x", 0L)}), c({gi("w", 1L), g("Gamma"), gi("x", 1L)})));
  P.add_relation("IP", g("IP"), add_mor(c({gi("y", 0L), gi("a", 0L)}), c({gi("y", 1L), g("Pi"), gi("a", 1L)})));
  P.add_relation("IL", g("IL"),
                 add_mor(c({gi("y", 0L), gi("z", 0L)}), c({gi("y", 1L), g("Lambda"), gi("z", 1L)})));

  if (hyp.invertible_f) {
    const auto& src = hyp.invertible_f->source;
    if (!P.has_object(src)) P.add_object(ObjectRef::atomic(src));
    P.add_generator("f", src, "A");
    P.add_generator("fneg", src, "A");
    P.add_relation("inv", add_mor(g("f"), g("fneg")), P.zero(src, "A"));
    if (hyp.invertible_f->nonzero) P.flags.push_back("f_nonzero");
  }
  if (hyp.lambda_is_iso) P.flags.push_back("lambda_is_iso");
  if (hyp.idempotent_homs) P.flags.push_back("idempotent_homs");
  return P;
}

/// Number of listed comparison maps present in `pres`.
inline std::size_t count_swindle_generators(const Presentation& pres) {
  std::size_t n = 0;
  for (const auto& name : swindle_generators()) {
    auto br = name.find('[');
    n += pres.find_generator(br == std::string::npos ? name : name.substr(0, br)) != nullptr;
  }
  return n;
}

/// Number of the construction's labelled relation groups present in `pres`.
inline std::size_t count_swindle_relations(const Presentation& pres) {
  auto have = pres.labels();
  std::size_t n = 0;
  for (const auto& l : swindle_labels()) n += std::find(have.begin(), have.end(), l) != have.end();
  return n;
}

struct NamedGoal {
  std::string name;
  MorTerm lhs, rhs;
};

/// The six panel identities of the two diagrams.
inline std::vector<NamedGoal> panel_goals(const Presentation& P) {
  auto g = [&](const char* n) { return P.gen(n); };
  auto c = [&](std::initializer_list<MorTerm> ts) { return compose_all(ts); };
  return {
      {"panel-pi", c({g("v"), g("eta"), g("Pi")}), g("Pi")},
      {"panel-sigma", c({g("Sigma"), g("eps"), g("u")}), g("Sigma")},
      {"panel-lambda", c({g("v"), g("LL"), g("u")}), g("Lambda")},
      {"panel-pi'", c({g("g"), g("IP"), g("eta'")}), g("Pi")},
      {"panel-lambda'", c({g("g"), g("IL"), g("h")}), g("Lambda")},
      {"panel-sigma'", c({g("eps'"), g("IS"), g("h")}), g("Sigma")},
  };
}

/// Two-sided inverses of the vertical and componentwise maps.
inline std::vector<NamedGoal> inverse_goals(const Presentation& P) {
  auto g = [&](const char* n) { return P.gen(n); };
  auto c = [&](MorTerm a, MorTerm b) { return compose(a, b); };
  std::vector<NamedGoal> out{
      {"v.v'", c(g("v"), g("v'")), P.id("P")},   {"v'.v", c(g("v'"), g("v")), P.id("P2")},
      {"u.u'", c(g("u"), g("u'")), P.id("Q2")},  {"u'.u", c(g("u'"), g("u")), P.id("Q")},
      {"g.g'", c(g("g"), g("g'")), P.id("P")},   {"g'.g", c(g("g'"), g("g")), P.id("AP")},
      {"h.h'", c(g("h"), g("h'")), P.id("AQ")},  {"h'.h", c(g("h'"), g("h")), P.id("Q")},
  };
  if (P.find_generator("GG")) {
    out.push_back({"LL.GG", c(g("LL"), g("GG")), P.id("P2")});
    out.push_back({"GG.LL", c(g("GG"), g("LL")), P.id("Q2")});
    out.push_back({"IL.IG", c(g("IL"), g("IG")), P.id("AP")});
    out.push_back({"IG.IL", c(g("IG"), g("IL")), P.id("AQ")});
  }
  return out;
}

struct GoalOutcome {
  std::string name;
  ProofResult proof;
  bool replayed = false;
};

inline GoalOutcome run_goal(const NamedGoal& goal, const Presentation& P, const RuleSet& rs,
                            const ChaseOptions& opt) {
  GoalOutcome o{goal.name, prove_equal(goal.lhs, goal.rhs, P, rs, opt), false};
  if (o.proof.proved()) o.replayed = replay(o.proof, P, rs).passed;
  return o;
}

inline json outcome_json(const GoalOutcome& o) {
  return {{"name", o.name},
          {"goal", o.proof.goal},
          {"status", to_string(o.proof.status)},
          {"branches", o.proof.proved() ? o.proof.branch_count() : 0},
          {"steps", o.proof.steps().size()},
          {"replayed", o.replayed}};
}

/// Proves the six panels and the inverse pairs; every proof is replayed.
inline Report verify_diagrams(const Presentation& P, const ChaseOptions& opt = {}) {
  Report rep;
  rep.name = "verify_diagrams";
  rep.mode = "symbolic";
  if (!P.has_flag("lambda_is_iso")) {
    rep.fail("the canonical map is not assumed invertible");
    return rep;
  }
  RuleSet rs = RuleSet::from(P);
  json goals = json::array();
  auto run = [&](const NamedGoal& g) {
    ++rep.checks;
    GoalOutcome o;
    try {
      o = run_goal(g, P, rs, opt);
    } catch (const Error& e) {
      rep.fail(g.name + ": " + e.what());
      goals.push_back({{"name", g.name}, {"status", "unknown"}, {"error", e.what()}});
      return;
    }
    if (!o.proof.proved()) rep.fail(g.name + " not proved: " + o.proof.reason);
    else if (!o.replayed) rep.fail(g.name + " does not replay");
    goals.push_back(outcome_json(o));
  };
  for (const auto& g : panel_goals(P)) run(g);
  for (const auto& g : inverse_goals(P)) run(g);
  rep.data["goals"] = std::move(goals);
  return rep;
}

// ---------------------------------------------------------------------------
// Key identities

struct ChainProof {
  std::string name;
  std::vector<ChainStep> chain;
  ChainResult result;
  bool replayed = false;
  std::string route;  // "direct" or "chain"
};

inline json chain_json(const ChainProof& c) {
  json j = c.result.to_json();
  j["name"] = c.name;
  j["route"] = c.route;
  j["replayed"] = c.replayed;
  return j;
}

/// Lemmas available to the chains: proved goals used left to right.
struct LemmaBook {
  std::vector<Lemma> lemmas;
  std::vector<std::string> missing;

  bool has(const std::string& n) const {
    return std::any_of(lemmas.begin(), lemmas.end(), [&](const Lemma& l) { return l.name == n; });
  }
  void prove(const std::string& name, const MorTerm& lhs, const MorTerm& rhs, const Presentation& P,
             const ChaseOptions& opt) {
    try {
      auto rs = RuleSet::from(P);
      auto r = prove_equal(lhs, rhs, P, rs, opt);
      if (r.proved() && replay(r, P, rs).passed) {
        lemmas.push_back({name, lhs, rhs});
        return;
      }
    } catch (const Error&) {
    }
    missing.push_back(name);
  }
};

namespace detail {

inline ChainProof run_chain(const std::string& name, std::vector<ChainStep> chain, const Presentation& P,
                            const std::vector<Lemma>& lemmas, const ChaseOptions& opt) {
  ChainProof c{name, std::move(chain), {}, false, "chain"};
  c.result.goal = c.chain.front().term.str() + " = " + c.chain.back().term.str();
  try {
    c.result = prove_chain(c.chain, P, lemmas, opt);
    if (c.result.proved()) c.replayed = replay(c.result, c.chain, P, lemmas).passed;
  } catch (const Error& e) {
    c.result.status = ProofStatus::unknown;
    c.result.reason = e.what();
  }
  return c;
}

/// Tries the goal by plain normalization first and falls back to the chain.
inline ChainProof direct_or_chain(const std::string& name, std::vector<ChainStep> chain, const Presentation& P,
                                  const std::vector<Lemma>& lemmas, const ChaseOptions& opt) {
  try {
    auto rs = RuleSet::from(P);
    auto r = prove_equal(chain.front().term, chain.back().term, P, rs, opt);
    if (r.proved()) {
      ChainProof c{name, {chain.front(), ChainStep{chain.back().term, P.labels(), {}}}, {}, false, "direct"};
      c.result.goal = r.goal;
      c.result.status = r.status;
      c.result.links.push_back(r);
      c.replayed = replay(r, P, rs).passed;
      return c;
    }
  } catch (const Error&) {
  }
  return run_chain(name, std::move(chain), P, lemmas, opt);
}

}  // namespace detail

struct KeyIdentities {
  Report report;
  LemmaBook book;
  ChainProof doubling;   // ΣΓΠ + ΣΓΠ = ΣΓΠ
  ChainProof absorbing;  // 1 + ΣΓΠ = ΣΓΠ
};

/// Derives ΣΓΠ + ΣΓΠ = ΣΓΠ and 1 + ΣΓΠ = ΣΓΠ. The second goes through the
/// middle panel of the bordered diagram via 1×Γ = hΓg.
inline KeyIdentities derive_key_identities(const Presentation& P, const ChaseOptions& opt = {}) {
  KeyIdentities k;
  k.report.name = "derive_key_identities";
  k.report.mode = "symbolic";
  if (!P.find_generator("Gamma")) {
    k.report.fail("no inverse of the canonical map in the presentation");
    return k;
  }
  auto g = [&](const char* n) { return P.gen(n); };
  auto gi = [&](const char* n, long i) { return P.gen(n, i); };
  auto c = [&](std::initializer_list<MorTerm> ts) { return compose_all(ts); };
  auto& book = k.book;
  const auto sgp = c({g("Sigma"), g("Gamma"), g("Pi")});

  // panel and inverse lemmas
  book.prove("LL.GG", c({g("LL"), g("GG")}), P.id("P2"), P, opt);
  book.prove("u.u'", c({g("u"), g("u'")}), P.id("Q2"), P, opt);
  book.prove("v.LL.u", c({g("v"), g("LL"), g("u")}), g("Lambda"), P, opt);
  book.prove("Sigma.eps.u", c({g("Sigma"), g("eps"), g("u")}), g("Sigma"), P, opt);
  book.prove("v.eta.Pi", c({g("v"), g("eta"), g("Pi")}), g("Pi"), P, opt);
  book.prove("IL.IG", c({g("IL"), g("IG")}), P.id("AP"), P, opt);
  book.prove("h.h'", c({g("h"), g("h'")}), P.id("AQ"), P, opt);
  book.prove("g.IL.h", c({g("g"), g("IL"), g("h")}), g("Lambda"), P, opt);
  book.prove("eps'.IS.h", c({g("eps'"), g("IS"), g("h")}), g("Sigma"), P, opt);
  book.prove("g.IP.eta'", c({g("g"), g("IP"), g("eta'")}), g("Pi"), P, opt);

  // uΓv = Γ×Γ from Λ = v(Λ×Λ)u and the inverses
  const auto ugv = c({g("u"), g("Gamma"), g("v")});
  auto swap_chain = detail::run_chain(
      "u.Gamma.v", {{ugv, {}, {}},
                    {c({ugv, g("LL"), g("GG")}), {}, {"LL.GG"}},
                    {c({ugv, g("LL"), g("u"), g("u'"), g("GG")}), {}, {"u.u'"}},
                    {c({g("u"), g("Gamma"), g("Lambda"), g("u'"), g("GG")}), {}, {"v.LL.u"}},
                    {c({g("u"), g("u'"), g("GG")}), {"Gamma"}, {}},
                    {g("GG"), {}, {"u.u'"}}},
      P, book.lemmas, opt);
  if (swap_chain.result.proved() && swap_chain.replayed) book.lemmas.push_back({"u.Gamma.v", ugv, g("GG")});
  else book.missing.push_back("u.Gamma.v");

  // hΓg = 1×Γ from Λ = g(1×Λ)h and the inverses
  const auto hgg = c({g("h"), g("Gamma"), g("g")});
  auto border_chain = detail::run_chain(
      "h.Gamma.g", {{hgg, {}, {}},
                    {c({hgg, g("IL"), g("IG")}), {}, {"IL.IG"}},
                    {c({hgg, g("IL"), g("h"), g("h'"), g("IG")}), {}, {"h.h'"}},
                    {c({g("h"), g("Gamma"), g("Lambda"), g("h'"), g("IG")}), {}, {"g.IL.h"}},
                    {c({g("h"), g("h'"), g("IG")}), {"Gamma"}, {}},
                    {g("IG"), {}, {"h.h'"}}},
      P, book.lemmas, opt);
  if (border_chain.result.proved() && border_chain.replayed) book.lemmas.push_back({"h.Gamma.g", hgg, g("IG")});
  else book.missing.push_back("h.Gamma.g");

  k.doubling = detail::direct_or_chain(
      "doubling", {{add_mor(sgp, sgp), {}, {}},
                   {c({g("Sigma"), g("eps"), g("GG"), g("eta"), g("Pi")}), {"GG", "e1", "e2"}, {}},
                   {c({g("Sigma"), g("eps"), ugv, g("eta"), g("Pi")}), {}, {"u.Gamma.v"}},
                   {c({g("Sigma"), g("Gamma"), g("v"), g("eta"), g("Pi")}), {}, {"Sigma.eps.u"}},
                   {sgp, {}, {"v.eta.Pi"}}},
      P, book.lemmas, opt);

  const auto middle = add_mor(c({gi("b", 0), gi("a", 0)}), c({gi("b", 1), sgp, gi("a", 1)}));
  k.absorbing = detail::direct_or_chain(
      "absorbing", {{add_mor(P.id("A"), sgp), {}, {}},
                    {c({g("eps'"), middle, g("eta'")}), {"AA", "eta'", "eps'"}, {}},
                    {c({g("eps'"), g("IS"), g("IG"), g("IP"), g("eta'")}),
                     {"IS", "IG", "IP", "AP", "AQ", "AA", "eta'", "eps'"},
                     {}},
                    {c({g("eps'"), g("IS"), hgg, g("IP"), g("eta'")}), {}, {"h.Gamma.g"}},
                    {c({g("Sigma"), g("Gamma"), g("g"), g("IP"), g("eta'")}), {}, {"eps'.IS.h"}},
                    {sgp, {}, {"g.IP.eta'"}}},
      P, book.lemmas, opt);

  json chains = json::array();
  for (const auto* ch : {&swap_chain, &border_chain, &k.doubling, &k.absorbing}) {
    ++k.report.checks;
    chains.push_back(chain_json(*ch));
  }
  for (const auto* ch : {&k.doubling, &k.absorbing}) {
    if (!ch->result.proved()) k.report.fail(ch->name + " not proved: " + ch->result.reason);
    else if (!ch->replayed) k.report.fail(ch->name + " does not replay");
  }
  if (k.doubling.result.proved()) book.lemmas.push_back({"doubling", add_mor(sgp, sgp), sgp});
  if (k.absorbing.result.proved()) book.lemmas.push_back({"absorbing", add_mor(P.id("A"), sgp), sgp});
  k.report.data["chains"] = std::move(chains);
  k.report.data["missing_lemmas"] = book.missing;
  if (P.has_flag("idempotent_homs") && !P.has_flag("lambda_is_iso"))
    k.report.notes.push_back("idempotent homs without an inverse of the canonical map: t + t = t holds for every t");
  return k;
}

// ---------------------------------------------------------------------------
// Verdicts

struct InvertibleVerdict {
  Report report;
  std::string result;  // CONTRADICTION, F-ZERO or NO-CONTRADICTION
  bool f_zero = false;
  std::vector<ChainProof> trace;
  std::vector<Lemma> lemmas;  // everything the trace may cite
};

/// With f + fneg = 0 in Hom(X, A): f' = ΣΓΠf satisfies f' + f' = f' and is
/// invertible, so f' = 0; then f + f' = f' gives f = 0. If the hypothesis
/// also claims f != 0 the result is a contradiction.
inline InvertibleVerdict no_invertible_verdict(const Presentation& P, const ChaseOptions& opt = {}) {
  InvertibleVerdict v;
  v.report.name = "no_invertible_verdict";
  v.report.mode = "symbolic";
  if (!P.find_generator("f") || !P.find_generator("fneg"))
    throw UnknownSymbol("the hypothesis supplies no invertible f");
  auto key = derive_key_identities(P, opt);
  auto g = [&](const char* n) { return P.gen(n); };
  const auto sgp = compose_all({g("Sigma"), g("Gamma"), g("Pi")});
  const auto fp = compose(sgp, g("f"));
  const auto fpn = compose(sgp, g("fneg"));
  const auto& X = P.find_generator("f")->dom;

  auto lemmas = key.book.lemmas;
  auto collapse = detail::run_chain("f'=0",
                                    {{fp, {}, {}},
                                     {add_mor(add_mor(fp, fp), fpn), {"inv"}, {}},
                                     {add_mor(fp, fpn), {}, {"doubling"}},
                                     {P.zero(X, "A"), {"inv"}, {}}},
                                    P, lemmas, opt);
  v.trace.push_back(collapse);
  if (collapse.result.proved() && collapse.replayed) lemmas.push_back({"f'=0", fp, P.zero(X, "A")});
  auto vanish = detail::run_chain("f=0",
                                  {{g("f"), {}, {}},
                                   {add_mor(g("f"), fp), {}, {"f'=0"}},
                                   {fp, {}, {"absorbing"}},
                                   {P.zero(X, "A"), {}, {"f'=0"}}},
                                  P, lemmas, opt);
  v.trace.push_back(vanish);
  v.f_zero = vanish.result.proved() && vanish.replayed;
  v.lemmas = std::move(lemmas);

  json trace = json::array();
  for (const auto& c : v.trace) trace.push_back(chain_json(c));
  v.report.checks = v.trace.size();
  v.report.data["key_identities"] = key.report.to_json();
  v.report.data["trace"] = std::move(trace);
  if (v.f_zero && P.has_flag("f_nonzero")) {
    v.result = "CONTRADICTION";
    v.report.data["derived"] = "f = 0";
    v.report.data["assumed"] = "f != 0";
  } else if (v.f_zero) {
    v.result = "F-ZERO";
    v.report.data["derived"] = "f = 0";
  } else {
    v.result = "NO-CONTRADICTION";
    v.report.notes.push_back("f = 0 is not derivable: " + vanish.result.reason);
  }
  v.report.data["result"] = v.result;
  return v;
}

struct AblationRow {
  std::string label;
  std::vector<std::string> broken;  // goals no longer proved
};

/// Deletes each of e1..e12 in turn and records which goals stop being proved.
inline std::vector<AblationRow> ablation_sweep(const Hypothesis& hyp = {}, const ChaseOptions& opt = {}) {
  std::vector<AblationRow> rows;
  for (int i = 1; i <= 12; ++i) {
    std::string label = "e" + std::to_string(i);
    auto P = build_swindle_presentation(hyp);
    P.remove_label(label);
    AblationRow row{label, {}};
    auto d = verify_diagrams(P, opt);
    for (const auto& g : d.data["goals"])
      if (g["status"] != "proved" || !g.value("replayed", false)) row.broken.push_back(g["name"]);
    auto k = derive_key_identities(P, opt);
    for (const auto* c : {&k.doubling, &k.absorbing})
      if (!c->result.proved()) row.broken.push_back(c->name);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace prodsum
