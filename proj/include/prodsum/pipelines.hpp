#pragma once

// The batch pipelines behind the command-line tool. Each returns a RunReport
// whose JSON form depends only on the inputs and the seed.

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prodsum/coring.hpp"
#include "prodsum/dsl.hpp"
#include "prodsum/truncation.hpp"
#include "prodsum/verdict.hpp"

namespace prodsum {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr std::uint64_t default_seed = 0x5eed;

struct RunOptions {
  std::string command, sub;
  std::string file;
  std::string model;     // finab, lattice or empty for both
  std::string truncate;  // a size N, or "symbolic"
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = default_seed;
  long ring = 2;
};

struct RunEntry {
  std::string name;
  bool passed = false;
  std::string summary;  // one line for text reports
  json detail;
};

struct RunReport {
  std::string command;
  std::uint64_t seed = default_seed;
  std::vector<RunEntry> entries;

  bool passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const RunEntry& e) { return e.passed; });
  }

  json to_json() const {
    json j;
    j["tool"] = "prodsum";
    j["version"] = tool_version;
    j["command"] = command;
    j["seed"] = seed;
    j["passed"] = passed();
    json rs = json::array();
    for (const auto& e : entries) rs.push_back({{"name", e.name}, {"passed", e.passed}, {"detail", e.detail}});
    j["results"] = rs;
    return j;
  }

  std::string to_text() const {
    std::string s = "prodsum " + command + ": " + (passed() ? "PASS" : "FAIL") + "\n";
    for (const auto& e : entries) {
      s += std::string("  [") + (e.passed ? "PASS" : "FAIL") + "] " + e.name;
      if (!e.summary.empty()) s += "  " + e.summary;
      s += "\n";
    }
    return s;
  }

  void add(std::string name, const Report& r) {
    std::string summary = std::to_string(r.checks) + " checks";
    if (!r.mode.empty()) summary += ", " + r.mode;
    if (!r.passed) summary += "; " + r.counterexample;
    entries.push_back({std::move(name), r.passed, summary, r.to_json()});
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline ChaseOptions chase_options(const RunOptions& o) {
  ChaseOptions c;
  if (o.budget) c.budget = *o.budget;
  return c;
}

inline std::vector<std::string> models_of(const RunOptions& o) {
  if (o.model.empty()) return {"finab", "lattice"};
  if (o.model != "finab" && o.model != "lattice") throw ModelUnsupported("unknown model " + o.model);
  return {o.model};
}

inline std::optional<std::size_t> size_of(const RunOptions& o) {
  if (o.truncate.empty() || o.truncate == "symbolic") return std::nullopt;
  try {
    std::size_t used = 0;
    long n = std::stol(o.truncate, &used);
    if (used != o.truncate.size() || n < 1) throw std::invalid_argument("size");
    return static_cast<std::size_t>(n);
  } catch (const std::logic_error&) {
    throw ShapeMismatch("--truncate takes a positive size or 'symbolic', got " + o.truncate);
  }
}

inline FinAbModel& finab() {
  static FinAbModel m;
  return m;
}

inline LatticeModel& lattice() {
  static LatticeModel m;
  return m;
}

template <class M, class Obj>
void biproduct_suite(RunReport& out, const std::string& tag, const M& m, const std::vector<Obj>& pool,
                     std::mt19937_64& rng) {
  Report pairs;
  pairs.name = "biproduct_relations";
  pairs.mode = "sampled";
  for (int k = 0; k < 100; ++k) {
    const auto& x = pool[rng() % pool.size()];
    const auto& y = pool[rng() % pool.size()];
    pairs.absorb(verify_biproduct(m, build_biproduct(m, x, y)));
  }
  out.add(tag + " biproduct relations (100 pairs)", pairs);
  Report sums;
  sums.name = "sum_via_biproduct";
  sums.mode = "exhaustive";
  for (const auto& x : pool)
    for (const auto& y : pool) {
      auto hs = m.hom(x, y);
      if (hs.size() > 64) continue;
      for (const auto& f : hs)
        for (const auto& g : hs) {
          ++sums.checks;
          if (!m.equal(sum_via_biproduct(m, f, g), m.add(f, g)))
            sums.fail(m.describe(f) + " + " + m.describe(g));
        }
    }
  out.add(tag + " sum via biproduct", sums);
}

inline void prove_goals(RunReport& out, const SpecFile& spec, const ChaseOptions& opt) {
  auto rs = RuleSet::from(spec.pres);
  for (const auto& g : spec.goals) {
    auto res = prove_equal(g.lhs, g.rhs, spec.pres, rs, opt);
    bool replayed = res.proved() && replay(res, spec.pres, rs).passed;
    json d = res.to_json();
    d["replayed"] = replayed;
    std::string summary = to_string(res.status) + ", " + std::to_string(res.steps().size()) + " steps";
    if (!res.proved() && !res.reason.empty()) summary += "; " + res.reason;
    out.entries.push_back({"goal " + g.name, res.proved() && replayed, summary, d});
  }
}

inline RunEntry verdict_entry(std::string name, const Verdict& v, bool passed) {
  json d = v.to_json();
  d["report"] = v.report.to_json();
  return {std::move(name), passed, v.result, d};
}

inline std::string vec_str(const std::vector<long>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace detail

inline RunReport run_command(const RunOptions& o) {
  RunReport out;
  out.command = o.command + (o.sub.empty() ? "" : " " + o.sub);
  out.seed = o.seed;
  std::mt19937_64 rng(o.seed);
  auto opt = detail::chase_options(o);
  const std::string cmd = out.command;

  if (cmd == "check enrichment") {
    for (const auto& m : detail::models_of(o)) {
      if (m == "finab") out.add("finab enrichment (|X| <= 8)", check_enrichment(detail::finab(), FinAbModel::groups_up_to(8)));
      else out.add("lattice enrichment (|X| <= 4)", check_enrichment(detail::lattice(), LatticeObject::all_up_to(4)));
    }
  } else if (cmd == "check biproduct") {
    for (const auto& m : detail::models_of(o)) {
      if (m == "finab") {
        auto pool = FinAbModel::groups_up_to(8);
        detail::biproduct_suite(out, "finab", detail::finab(), pool, rng);
      } else {
        detail::biproduct_suite(out, "lattice", detail::lattice(), LatticeObject::all_up_to(4), rng);
      }
    }
  } else if (cmd == "chase prove") {
    auto spec = parse_spec(read_file(o.file));
    detail::prove_goals(out, spec, opt);
    if (spec.goals.empty()) out.entries.push_back({"no goals", true, "nothing to prove", json::object()});
  } else if (cmd == "swindle run") {
    auto spec = parse_spec(read_file(o.file));
    const auto& P = spec.pres;
    out.add("diagrams", verify_diagrams(P, opt));
    if (P.find_generator("Gamma")) {
      auto k = derive_key_identities(P, opt);
      RunEntry e{"key identities", k.report.passed, "", k.report.to_json()};
      e.detail["doubling"] = chain_json(k.doubling);
      e.detail["absorbing"] = chain_json(k.absorbing);
      e.summary = "doubling " + to_string(k.doubling.result.status) + " via " + k.doubling.route + ", absorbing " +
                  to_string(k.absorbing.result.status) + " via " + k.absorbing.route;
      out.entries.push_back(std::move(e));
    }
    if (P.find_generator("f") && P.find_generator("fneg")) {
      auto v = no_invertible_verdict(P, opt);
      bool replayed = std::all_of(v.trace.begin(), v.trace.end(), [](const ChainProof& c) { return c.replayed; });
      bool ok = v.result != "NO-CONTRADICTION" && replayed;
      out.entries.push_back({"invertible f", ok, v.result + (replayed ? ", trace replayed" : ""), v.report.to_json()});
    }
    detail::prove_goals(out, spec, opt);
    if (auto n = detail::size_of(o))
      out.add("truncation N=" + std::to_string(*n), truncation_cross_check(P, {static_cast<long>(*n)}, {2, 3}, opt));
  } else if (cmd == "verdict finiteness") {
    auto model = o.model.empty() ? std::string("finab") : o.model;
    auto n = detail::size_of(o);
    Verdict v;
    if (model == "finab") {
      auto pool = FinAbModel::groups_up_to(8);
      std::erase_if(pool, [](const FinAbObject& x) { return x.rank() == 0; });
      if (n) {
        std::vector<FinAbObject> fam;
        for (std::size_t k = 0; k < *n; ++k) fam.push_back(pool[rng() % pool.size()]);
        v = finiteness_verdict(detail::finab(), FamilySpec<FinAbModel>::finite(fam), opt);
      } else {
        v = finiteness_verdict(detail::finab(), FamilySpec<FinAbModel>::countable(FinAbModel::Z({2})), opt);
      }
    } else if (model == "lattice") {
      auto pool = LatticeObject::all_up_to(3);
      if (n) {
        std::vector<LatticeObject> fam;
        for (std::size_t k = 0; k < *n; ++k) fam.push_back(pool[rng() % pool.size()]);
        v = finiteness_verdict(detail::lattice(), FamilySpec<LatticeModel>::finite(fam), opt);
      } else {
        v = finiteness_verdict(detail::lattice(), FamilySpec<LatticeModel>::countable(LatticeObject::chain(2)), opt);
      }
    } else {
      throw ModelUnsupported("unknown model " + model);
    }
    out.entries.push_back(detail::verdict_entry(model + " " + v.mode, v, v.report.passed));
  } else if (cmd == "coring check") {
    auto j = json::parse(read_file(o.file), nullptr, false);
    if (j.is_discarded()) throw FixtureError(o.file + " is not valid JSON");
    auto C = coring_from_json(j);
    auto r = check_coring(C);
    out.add("coring laws", r);
    if (r.passed && dual_algebra(C).size() <= 256) out.add("dual algebra", check_dual_algebra(C));
    if (j.contains("comodules"))
      for (std::size_t k = 0; k < j["comodules"].size(); ++k)
        out.add("comodule " + std::to_string(k), check_comodule(comodule_from_json(j["comodules"][k], C), C));
  } else if (cmd == "coring frobenius") {
    auto j = json::parse(read_file(o.file), nullptr, false);
    if (j.is_discarded()) throw FixtureError(o.file + " is not valid JSON");
    auto C = coring_from_json(j);
    auto s = frobenius_search(C);
    RunEntry e{"frobenius system", static_cast<bool>(s.system), "", s.report.to_json()};
    if (s.system) {
      e.summary = "e = " + detail::vec_str(s.system->e) + ", pi = " + detail::vec_str(s.system->pi.key());
      if (auto db = dual_basis(C)) out.add("dual basis", check_dual_basis(C, *db));
    } else {
      e.summary = "none among " + std::to_string(C.module.size()) + " candidates for e";
    }
    out.entries.insert(out.entries.begin(), std::move(e));
  } else if (cmd == "coring verdict") {
    auto v = product_coproduct_verdict(FiniteRing(o.ring), detail::size_of(o));
    out.entries.push_back(detail::verdict_entry("Z/" + std::to_string(o.ring) + " " + v.mode, v, v.report.passed));
  } else if (cmd == "demo lattice") {
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 6u, 50u, 1000u})
      out.add("indexed biproduct n=" + std::to_string(n),
              verify_universal_properties(lattice_indexed_biproduct({LatticeObject::chain(2)}, n)));
    auto v = finiteness_verdict(detail::lattice(), FamilySpec<LatticeModel>::countable(LatticeObject::chain(2)), opt);
    out.entries.push_back(detail::verdict_entry("countable family", v, v.result == "ISO-CONSISTENT"));
  } else if (cmd == "demo completed-family") {
    auto model = o.model.empty() ? std::string("lattice") : o.model;
    if (model == "finab") {
      completed_family_demo(detail::finab(), {FinAbModel::Z({2})});
    } else if (model == "lattice") {
      out.add("completed family", completed_family_demo(detail::lattice(),
                                                        {LatticeObject::chain(2), LatticeObject::chain(2)},
                                                        {2, 4, 8}, o.seed));
    } else {
      throw ModelUnsupported("unknown model " + model);
    }
  } else {
    throw UnknownCommand(cmd);
  }
  return out;
}

}  // namespace prodsum
