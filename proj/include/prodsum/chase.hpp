#pragma once

// Equational chase: decides goals lhs = rhs under a presentation by
// extensionality over declared products/coproducts, case splits on index
// variables and normalization. Every proof is recorded as a tree of rewrite
// steps that replay() re-checks from scratch.

#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prodsum/report.hpp"
#include "prodsum/rewrite.hpp"

namespace prodsum {

inline constexpr std::uint64_t default_budget = 10000;

/// Budget from PRODSUM_BUDGET when set, otherwise the default.
inline std::uint64_t budget_from_env() {
  if (const char* s = std::getenv("PRODSUM_BUDGET")) {
    char* end = nullptr;
    auto v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return default_budget;
}

struct ChaseOptions {
  std::uint64_t budget = budget_from_env();
  int max_split_depth = 6;
};

struct Goal {
  MorTerm lhs, rhs;
};

// ---------------------------------------------------------------------------
// Index-level operations

namespace detail {

inline std::optional<NormalForm> substitute(const NormalForm& nf, const Bindings& b, bool idempotent) {
  NormalForm out = nf;
  for (auto& p : out.terms)
    for (auto& a : p.atoms)
      if (a.index) {
        auto s = a.index->try_substitute(b);
        if (!s) return std::nullopt;
        a.index = *s;
      }
  canonicalize(out, idempotent);
  return out;
}

inline void collect_vars(const NormalForm& nf, std::set<std::string>& out) {
  for (const auto& p : nf.terms)
    for (const auto& a : p.atoms)
      if (a.index && !a.index->is_literal()) out.insert(a.index->var());
}

}  // namespace detail

/// Substitutes var ↦ 2var and var ↦ 2var+1 in both sides.
inline std::pair<Goal, Goal> case_split_parity(const Goal& g, const std::string& var) {
  auto vars = g.lhs.vars();
  auto rv = g.rhs.vars();
  vars.insert(rv.begin(), rv.end());
  if (!vars.count(var)) throw VariableAbsent("index variable " + var + " does not occur in the goal");
  auto branch = [&](int off) {
    Bindings b{{var, IndexExpr::variable(var, 2, off)}};
    return Goal{g.lhs.substitute(b), g.rhs.substitute(b)};
  };
  return {branch(0), branch(1)};
}

/// δ_{i,j} as a morphism on `obj`: the identity when i = j, zero when the
/// indices are provably distinct.
inline MorTerm resolve_delta(const IndexExpr& i, const IndexExpr& j, const std::string& obj,
                             const Constraints& cs = {}) {
  switch (decide_delta(i, j, cs)) {
    case DeltaValue::equal: return MorTerm::identity(obj);
    case DeltaValue::distinct: return MorTerm::zero(obj, obj);
    case DeltaValue::undecided: break;
  }
  throw Undecidable("cannot decide whether " + i.str() + " = " + j.str());
}

// ---------------------------------------------------------------------------
// Normalization

struct Normalized {
  NormalForm nf;
  std::vector<Step> steps;
  std::vector<Split> hints;  // splits that would unblock a rule on the result
};

inline Normalized normalize_nf(NormalForm nf, const RuleSet& rs, const Constraints& cs, std::uint64_t& budget) {
  Normalized out;
  std::vector<Split> hints;
  RewriteContext ctx{&cs, &budget, &hints};
  while (true) {
    hints.clear();
    auto s = rewrite_once(nf, rs, ctx);
    if (!s) break;
    out.steps.push_back(std::move(*s));
  }
  out.nf = std::move(nf);
  out.hints = std::move(hints);
  return out;
}

inline MorTerm normalize(const MorTerm& t, const Presentation& pres, std::uint64_t budget = budget_from_env()) {
  pres.check_term(t);
  auto rs = RuleSet::from(pres);
  return to_term(normalize_nf(to_normal_form(t, rs.idempotent), rs, {}, budget).nf);
}

// ---------------------------------------------------------------------------
// Proof trees

enum class ProofStatus { proved, disproved, unknown };

inline std::string to_string(ProofStatus s) {
  switch (s) {
    case ProofStatus::proved: return "proved";
    case ProofStatus::disproved: return "disproved";
    case ProofStatus::unknown: return "unknown";
  }
  return {};
}

/// One goal in the split tree: both sides are normalized, then either they
/// coincide or a split produces two children from the normalized sides.
struct ProofNode {
  NormalForm lhs, rhs;  // before normalization
  Constraints constraints;
  std::vector<Step> lhs_steps, rhs_steps;
  std::optional<Split> split;
  bool vacuous = false;  // branch ruled out by its constraints
  std::vector<ProofNode> children;

  std::size_t leaves() const {
    if (children.empty()) return 1;
    std::size_t n = 0;
    for (const auto& c : children) n += c.leaves();
    return n;
  }
};

struct ProofResult {
  std::string goal;
  ProofStatus status = ProofStatus::unknown;
  std::string reason;
  std::vector<ProofNode> roots;  // one per extensionality subgoal
  std::vector<std::string> extensionality;
  MorTerm lhs = MorTerm::identity("?"), rhs = MorTerm::identity("?");

  bool proved() const { return status == ProofStatus::proved; }

  std::size_t branch_count() const {
    std::size_t n = 0;
    for (const auto& r : roots) n += r.leaves();
    return n;
  }

  std::vector<Step> steps() const {
    std::vector<Step> out;
    std::function<void(const ProofNode&)> walk = [&](const ProofNode& n) {
      out.insert(out.end(), n.lhs_steps.begin(), n.lhs_steps.end());
      out.insert(out.end(), n.rhs_steps.begin(), n.rhs_steps.end());
      for (const auto& c : n.children) walk(c);
    };
    for (const auto& r : roots) walk(r);
    return out;
  }

  json to_json() const {
    json j;
    j["goal"] = goal;
    j["status"] = to_string(status);
    j["branch_count"] = status == ProofStatus::proved ? branch_count() : 0;
    json steps = json::array();
    std::function<void(const ProofNode&, const std::string&)> walk = [&](const ProofNode& n,
                                                                         const std::string& where) {
      for (const auto& s : n.lhs_steps) steps.push_back({{"rule", s.rule}, {"position", where + "L:" + s.pos.str()}});
      for (const auto& s : n.rhs_steps) steps.push_back({{"rule", s.rule}, {"position", where + "R:" + s.pos.str()}});
      for (std::size_t k = 0; k < n.children.size(); ++k)
        walk(n.children[k], where + n.split->str() + "=" + std::to_string(k) + "/");
    };
    for (std::size_t r = 0; r < roots.size(); ++r) walk(roots[r], "g" + std::to_string(r) + "/");
    j["steps"] = std::move(steps);
    if (!reason.empty()) j["reason"] = reason;
    return j;
  }
};

namespace detail {

struct Branch {
  NormalForm lhs, rhs;
  Constraints cs;
  bool vacuous = false;
};

/// The two branches of a split, or nullopt if a substitution leaves the
/// index language.
inline std::optional<std::pair<Branch, Branch>> apply_split(const Split& s, const NormalForm& lhs,
                                                           const NormalForm& rhs, const Constraints& cs,
                                                           bool idem) {
  auto subst = [&](const Bindings& b, Constraints c) -> std::optional<Branch> {
    auto l = substitute(lhs, b, idem);
    auto r = substitute(rhs, b, idem);
    if (!l || !r) return std::nullopt;
    return Branch{*l, *r, std::move(c), false};
  };
  auto drop = [&](const std::string& v) {
    Constraints c;
    for (const auto& p : cs)
      if (p.first != v && p.second != v) c.insert(p);
    return c;
  };
  std::optional<Branch> a, b;
  switch (s.kind) {
    case Split::Kind::parity:
      a = subst({{s.var, IndexExpr::variable(s.var, 2, 0)}}, drop(s.var));
      b = subst({{s.var, IndexExpr::variable(s.var, 2, 1)}}, drop(s.var));
      break;
    case Split::Kind::zero_succ:
      a = subst({{s.var, IndexExpr::literal(0)}}, drop(s.var));
      b = subst({{s.var, IndexExpr::variable(s.var, 1, 1)}}, drop(s.var));
      break;
    case Split::Kind::delta: {
      // unify: other := var; constraints are renamed
      Constraints renamed;
      bool contradiction = false;
      for (auto [x, y] : cs) {
        if (x == s.other) x = s.var;
        if (y == s.other) y = s.var;
        if (x == y) contradiction = true;
        else renamed.insert(neq(x, y));
      }
      a = subst({{s.other, IndexExpr::variable(s.var)}}, renamed);
      if (a) a->vacuous = contradiction;
      Constraints c = cs;
      c.insert(neq(s.var, s.other));
      b = Branch{lhs, rhs, std::move(c), false};
      break;
    }
  }
  if (!a || !b) return std::nullopt;
  return std::pair{std::move(*a), std::move(*b)};
}

class Prover {
 public:
  Prover(const RuleSet& rs, const ChaseOptions& opt) : rs_(rs), opt_(opt), budget_(opt.budget) {}

  std::uint64_t budget_left() const { return budget_; }

  /// Proves the branch or returns nullopt. Throws BudgetExhausted.
  std::optional<ProofNode> prove(const Branch& br, int depth) {
    ProofNode node;
    node.lhs = br.lhs;
    node.rhs = br.rhs;
    node.constraints = br.cs;
    if (br.vacuous) {
      node.vacuous = true;
      return node;
    }
    auto l = normalize_nf(br.lhs, rs_, br.cs, budget_);
    auto r = normalize_nf(br.rhs, rs_, br.cs, budget_);
    node.lhs_steps = l.steps;
    node.rhs_steps = r.steps;
    if (l.nf == r.nf) return node;
    if (depth <= 0) return std::nullopt;
    std::vector<Split> cands = l.hints;
    for (const auto& h : r.hints)
      if (std::find(cands.begin(), cands.end(), h) == cands.end()) cands.push_back(h);
    for (const auto& c : cands) {
      if (budget_ == 0) throw BudgetExhausted("rewrite step budget exhausted");
      --budget_;
      auto kids = apply_split(c, l.nf, r.nf, br.cs, rs_.idempotent);
      if (!kids) continue;
      auto a = prove(kids->first, depth - 1);
      if (!a) continue;
      auto b = prove(kids->second, depth - 1);
      if (!b) continue;
      node.split = c;
      node.children.push_back(std::move(*a));
      node.children.push_back(std::move(*b));
      return node;
    }
    return std::nullopt;
  }

 private:
  const RuleSet& rs_;
  ChaseOptions opt_;
  std::uint64_t budget_;
};

inline std::string fresh_var(const std::set<std::string>& used, int& counter) {
  while (true) {
    std::string v = "n" + std::to_string(counter++);
    if (!used.count(v)) return v;
  }
}

}  // namespace detail

/// Expands a goal by the universal properties: projections are composed on
/// the left while the codomain is a declared product, then injections on the
/// right while the domain is a declared coproduct. Finite families give one
/// goal per member; indexed families one goal with a fresh variable.
inline std::vector<Goal> extensionality(const Goal& g, const Presentation& pres,
                                        std::vector<std::string>* log = nullptr) {
  std::set<std::string> used = g.lhs.vars();
  for (const auto& v : g.rhs.vars()) used.insert(v);
  int counter = 0;
  std::vector<Goal> out;
  std::function<void(const Goal&, bool)> expand = [&](const Goal& cur, bool on_cod) {
    const LimitDecl* d = on_cod ? pres.product_of(cur.lhs.cod()) : pres.coproduct_of(cur.lhs.dom());
    if (!d) {
      if (on_cod) expand(cur, false);
      else out.push_back(cur);
      return;
    }
    std::vector<IndexExpr> members;
    if (d->indexed) {
      auto v = detail::fresh_var(used, counter);
      used.insert(v);
      members.push_back(IndexExpr::variable(v));
    } else {
      for (long k = 0; k < static_cast<long>(d->parts.size()); ++k) members.push_back(IndexExpr::literal(k));
    }
    for (const auto& m : members) {
      auto f = pres.gen(d->family, m);
      if (log) log->push_back(on_cod ? f.str() + " . _" : "_ . " + f.str());
      expand(on_cod ? Goal{compose(f, cur.lhs), compose(f, cur.rhs)} : Goal{compose(cur.lhs, f), compose(cur.rhs, f)},
             on_cod);
    }
  };
  expand(g, true);
  return out;
}

/// Proves lhs = rhs with the given rules. Products and coproducts are read
/// from `pres`; the rules may be any subset of its relations plus lemmas.
inline ProofResult prove_equal(const MorTerm& lhs, const MorTerm& rhs, const Presentation& pres, const RuleSet& rs,
                               const ChaseOptions& opt = {}) {
  ProofResult res;
  res.goal = lhs.str() + " = " + rhs.str();
  res.lhs = lhs;
  res.rhs = rhs;
  if (lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod())
    throw ParallelismViolation("goal sides are not parallel: " + res.goal);
  pres.check_term(lhs);
  pres.check_term(rhs);
  detail::Prover prover(rs, opt);
  try {
    for (const auto& g : extensionality({lhs, rhs}, pres, &res.extensionality)) {
      detail::Branch br{to_normal_form(g.lhs, rs.idempotent), to_normal_form(g.rhs, rs.idempotent), {}, false};
      auto node = prover.prove(br, opt.max_split_depth);
      if (!node) {
        res.status = ProofStatus::unknown;
        res.reason = "normal forms differ on " + g.lhs.str() + " = " + g.rhs.str();
        res.roots.clear();
        return res;
      }
      res.roots.push_back(std::move(*node));
    }
  } catch (const BudgetExhausted& e) {
    res.status = ProofStatus::unknown;
    res.reason = e.what();
    res.roots.clear();
    return res;
  }
  res.status = ProofStatus::proved;
  return res;
}

inline ProofResult prove_equal(const MorTerm& lhs, const MorTerm& rhs, const Presentation& pres,
                               const ChaseOptions& opt = {}) {
  return prove_equal(lhs, rhs, pres, RuleSet::from(pres), opt);
}

/// Re-derives every node of a proved result from the goal and re-applies each
/// recorded step; returns a failure report if anything does not line up.
inline Report replay(const ProofResult& res, const Presentation& pres, const RuleSet& rs) {
  Report rep;
  rep.name = "replay";
  rep.mode = "symbolic";
  if (!res.proved()) {
    rep.fail("result is not proved: " + res.goal);
    return rep;
  }
  auto goals = extensionality({res.lhs, res.rhs}, pres);
  if (goals.size() != res.roots.size()) {
    rep.fail("extensionality produced a different number of subgoals");
    return rep;
  }
  std::function<bool(const ProofNode&, const NormalForm&, const NormalForm&, const Constraints&)> check =
      [&](const ProofNode& n, const NormalForm& l0, const NormalForm& r0, const Constraints& cs) -> bool {
    ++rep.checks;
    if (!(n.lhs == l0) || !(n.rhs == r0) || n.constraints != cs) {
      rep.fail("node start does not match its derivation: " + l0.str() + " = " + r0.str());
      return false;
    }
    if (n.vacuous) return true;  // contradiction re-checked by the parent
    NormalForm l = l0, r = r0;
    try {
      for (const auto& s : n.lhs_steps) apply_step(l, rs, s, cs);
      for (const auto& s : n.rhs_steps) apply_step(r, rs, s, cs);
    } catch (const Error& e) {
      rep.fail(e.what());
      return false;
    }
    if (!n.split) {
      if (!(l == r)) rep.fail("normal forms differ after replay: " + l.str() + " vs " + r.str());
      return l == r;
    }
    auto kids = detail::apply_split(*n.split, l, r, cs, rs.idempotent);
    if (!kids || n.children.size() != 2) {
      rep.fail("split " + n.split->str() + " cannot be re-applied");
      return false;
    }
    if (n.children[0].vacuous != kids->first.vacuous || n.children[1].vacuous != kids->second.vacuous) {
      rep.fail("vacuous branch mismatch at " + n.split->str());
      return false;
    }
    return check(n.children[0], kids->first.lhs, kids->first.rhs, kids->first.cs) &&
           check(n.children[1], kids->second.lhs, kids->second.rhs, kids->second.cs);
  };
  for (std::size_t k = 0; k < goals.size(); ++k)
    if (!check(res.roots[k], to_normal_form(goals[k].lhs, rs.idempotent), to_normal_form(goals[k].rhs, rs.idempotent),
               {}))
      return rep;
  return rep;
}

// ---------------------------------------------------------------------------
// Chains of equalities

/// Each consecutive pair of terms is proved using only the listed relation
/// labels and lemmas (previously proved equalities used left to right).
struct ChainStep {
  MorTerm term;
  std::vector<std::string> labels;
  std::vector<std::string> lemmas;
};

struct Lemma {
  std::string name;
  MorTerm lhs, rhs;
};

struct ChainResult {
  std::string goal;
  ProofStatus status = ProofStatus::unknown;
  std::vector<ProofResult> links;
  std::string reason;

  bool proved() const { return status == ProofStatus::proved; }

  json to_json() const {
    json j;
    j["goal"] = goal;
    j["status"] = to_string(status);
    std::size_t branches = 0;
    json steps = json::array();
    for (std::size_t k = 0; k < links.size(); ++k) {
      branches += links[k].branch_count();
      for (auto s : links[k].to_json()["steps"]) {
        s["position"] = "link" + std::to_string(k) + "/" + s["position"].get<std::string>();
        steps.push_back(std::move(s));
      }
    }
    j["branch_count"] = proved() ? branches : 0;
    j["steps"] = std::move(steps);
    if (!reason.empty()) j["reason"] = reason;
    return j;
  }
};

inline RuleSet chain_rules(const Presentation& pres, const ChainStep& step, const std::vector<Lemma>& lemmas) {
  auto rs = RuleSet::from(pres, step.labels);
  for (const auto& name : step.lemmas) {
    auto it = std::find_if(lemmas.begin(), lemmas.end(), [&](const Lemma& l) { return l.name == name; });
    if (it == lemmas.end()) throw UnknownSymbol("no lemma named " + name);
    rs.add(name, it->lhs, it->rhs);
  }
  return rs;
}

inline ChainResult prove_chain(const std::vector<ChainStep>& chain, const Presentation& pres,
                               const std::vector<Lemma>& lemmas = {}, const ChaseOptions& opt = {}) {
  ChainResult out;
  if (chain.empty()) throw ShapeMismatch("empty chain");
  out.goal = chain.front().term.str() + " = " + chain.back().term.str();
  std::uint64_t budget = opt.budget;
  for (std::size_t k = 1; k < chain.size(); ++k) {
    ChaseOptions o = opt;
    o.budget = budget;
    auto rs = chain_rules(pres, chain[k], lemmas);
    auto link = prove_equal(chain[k - 1].term, chain[k].term, pres, rs, o);
    auto used = link.steps().size() + link.branch_count();
    budget = used >= budget ? 0 : budget - used;
    bool ok = link.proved();
    out.links.push_back(std::move(link));
    if (!ok) {
      out.status = ProofStatus::unknown;
      out.reason = "link " + std::to_string(k) + " not proved: " + out.links.back().reason;
      return out;
    }
  }
  out.status = ProofStatus::proved;
  return out;
}

inline Report replay(const ChainResult& res, const std::vector<ChainStep>& chain, const Presentation& pres,
                     const std::vector<Lemma>& lemmas = {}) {
  Report rep;
  rep.name = "replay";
  rep.mode = "symbolic";
  if (!res.proved() || res.links.size() + 1 != chain.size()) {
    rep.fail("chain is not proved: " + res.goal);
    return rep;
  }
  for (std::size_t k = 0; k < res.links.size(); ++k) {
    const auto& link = res.links[k];
    if (!MorTerm::same_syntax(link.lhs, chain[k].term) || !MorTerm::same_syntax(link.rhs, chain[k + 1].term)) {
      rep.fail("link " + std::to_string(k) + " does not connect the chain");
      return rep;
    }
    auto r = replay(link, pres, chain_rules(pres, chain[k + 1], lemmas));
    rep.absorb(r);
    if (!r.passed) return rep;
  }
  return rep;
}

}  // namespace prodsum
