// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any failed.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>

#include "prodsum/coring.hpp"
#include "prodsum/dsl.hpp"
#include "prodsum/pipelines.hpp"

using namespace prodsum;

namespace {

const std::filesystem::path root = PRODSUM_SOURCE_DIR;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail = what;
    passed &= ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

/// Every element of ⊕ Z/moduli, by odometer.
std::vector<std::vector<long>> elements_of(const FinAbObject& x) {
  std::vector<std::vector<long>> out;
  std::vector<long> v(x.rank(), 0);
  for (;;) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == x.moduli[i]) v[i++] = 0;
    if (i == v.size()) return out;
  }
}

Outcome enrichment() {
  Outcome o;
  auto t = std::chrono::steady_clock::now();
  auto fa = check_enrichment(FinAbModel{}, FinAbModel::groups_up_to(8));
  auto la = check_enrichment(LatticeModel{}, LatticeObject::all_up_to(4));
  o.require(fa.passed && fa.mode == "exhaustive", "finab: " + fa.counterexample);
  o.require(la.passed && la.mode == "exhaustive", "lattice: " + la.counterexample);
  double s = seconds_since(t);
  o.require(s < 10, "took " + std::to_string(s) + " s");
  if (o.passed) o.detail = std::to_string(fa.checks + la.checks) + " checks";
  return o;
}

Outcome biproducts() {
  Outcome o;
  RunOptions opt;
  opt.command = "check";
  opt.sub = "biproduct";
  auto r = run_command(opt);
  std::uint64_t checks = 0;
  for (const auto& e : r.entries) {
    o.require(e.passed, e.name + ": " + e.summary);
    checks += e.detail["checks"].get<std::uint64_t>();
  }
  o.require(r.entries.size() == 4, "expected two suites per model");
  if (o.passed) o.detail = std::to_string(checks) + " checks";
  return o;
}

Outcome canonical_maps() {
  Outcome o;
  FinAbModel m;
  std::mt19937_64 rng(default_seed);
  auto pool = FinAbModel::groups_up_to(8);
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<FinAbObject> fam;
    for (std::size_t k = 0; k < n; ++k) fam.push_back(pool[rng() % pool.size()]);
    auto c = canonical_morphism(m, fam);
    o.require(c.invertible, "finab n=" + std::to_string(n) + " not invertible");
    // two-sided inverse checked elementwise, independently of the model's equality
    const auto& S = c.sum.object;
    for (const auto& x : elements_of(S)) {
      o.require(c.inverse.apply(c.forward.apply(x)) == x, "inverse∘forward at n=" + std::to_string(n));
      o.require(c.forward.apply(c.inverse.apply(x)) == x, "forward∘inverse at n=" + std::to_string(n));
    }
  }
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 6u, 50u, 1000u}) {
    auto r = verify_universal_properties(lattice_indexed_biproduct({LatticeObject::chain(2)}, n));
    std::string want = n <= 6 ? "exhaustive" : "sampled";
    o.require(r.passed && r.mode == want, "lattice n=" + std::to_string(n) + ": " + r.counterexample);
  }
  if (o.passed) o.detail = "finab n = 1..6, lattice n = 1..6, 50, 1000";
  return o;
}

Outcome swindle() {
  Outcome o;
  auto t = std::chrono::steady_clock::now();
  auto P = build_swindle_presentation();
  auto d = verify_diagrams(P);
  o.require(d.passed, "diagrams: " + d.counterexample);
  auto k = derive_key_identities(P);
  o.require(k.doubling.result.proved() && k.doubling.replayed, "doubling identity");
  o.require(k.absorbing.result.proved() && k.absorbing.replayed, "absorbing identity");
  Hypothesis h;
  h.invertible_f = Hypothesis::InvertibleF{};
  auto Pf = build_swindle_presentation(h);
  auto v = no_invertible_verdict(Pf);
  o.require(v.result == "CONTRADICTION", "invertible f: " + v.result);
  for (const auto& c : v.trace) o.require(replay(c.result, c.chain, Pf, v.lemmas).passed, "trace " + c.name);
  double s = seconds_since(t);
  o.require(s < 30, "chase took " + std::to_string(s) + " s");
  std::size_t breaking = 0;
  auto rows = ablation_sweep();
  for (const auto& r : rows) {
    breaking += !r.broken.empty();
    o.require(!r.broken.empty(), "deleting " + r.label + " breaks nothing");
  }
  o.require(rows.size() == 12, "ablation covers " + std::to_string(rows.size()) + " relations");
  if (o.passed) o.detail = std::to_string(breaking) + "/12 deletions break a goal";
  return o;
}

Outcome truncation() {
  Outcome o;
  Hypothesis h;
  h.invertible_f = Hypothesis::InvertibleF{};
  for (const auto& P : {build_swindle_presentation(), build_swindle_presentation(h)}) {
    auto r = truncation_cross_check(P, {2, 4}, {2, 3});
    o.require(r.passed, r.counterexample);
  }
  return o;
}

Outcome lattice_consistency() {
  Outcome o;
  LatticeModel m;
  auto objs = LatticeObject::all_up_to(4);
  std::uint64_t checks = 0;
  for (const auto& x : objs)
    for (const auto& y : objs) {
      auto hs = m.hom(x, y);
      for (const auto& f : hs) {
        ++checks;
        o.require(m.equal(m.add(f, f), f), "f+f != f for " + m.describe(f));
        bool has_negative = false;
        for (const auto& g : hs) has_negative |= m.equal(m.add(f, g), m.zero(x, y));
        o.require(has_negative == m.equal(f, m.zero(x, y)), "invertible nonzero " + m.describe(f));
      }
    }
  auto v = finiteness_verdict(m, FamilySpec<LatticeModel>::countable(LatticeObject::chain(2)));
  o.require(v.result == "ISO-CONSISTENT", "symbolic verdict " + v.result);
  if (o.passed) o.detail = std::to_string(checks) + " morphisms";
  return o;
}

Outcome corings() {
  Outcome o;
  auto t = std::chrono::steady_clock::now();
  std::vector<Coring> all;
  for (long n : {2L, 4L, 6L}) {
    FiniteRing R(n);
    all.push_back(sweedler_coring(R));
    for (std::size_t k = 1; k <= 3; ++k) {
      all.push_back(grouplike_coring(R, k));
      all.push_back(direct_sum_coring(std::vector<Coring>(k, sweedler_coring(R))));
    }
  }
  for (const auto& C : all) {
    auto r = check_coring(C);
    o.require(r.passed, "coring over Z/" + std::to_string(C.n()) + ": " + r.counterexample);
    if (dual_algebra(C).size() <= 256) {
      auto a = check_dual_algebra(C);
      o.require(a.passed, "dual algebra: " + a.counterexample);
    }
  }
  std::size_t found = 0;
  for (long n : {2L, 4L})
    for (std::size_t k = 1; k <= 3; ++k) {
      auto C = grouplike_coring(FiniteRing(n), k);
      auto s = frobenius_search(C);
      std::string tag = "Z/" + std::to_string(n) + "^(" + std::to_string(k) + ")";
      o.require(s.system.has_value(), "no Frobenius system for " + tag);
      if (!s.system) continue;
      ++found;
      o.require(check_frobenius(C, *s.system).passed, "Frobenius system for " + tag + " fails its check");
      auto b = dual_basis(C);
      o.require(b && check_dual_basis(C, *b).passed, "no dual basis for " + tag);
    }
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    long n = trial % 2 ? 4 : 6;
    FiniteRing R(n);
    auto C = direct_sum_coring({sweedler_coring(R), grouplike_coring(R, 2), sweedler_coring(R)});
    std::vector<Comodule> parts;
    for (const auto& comp : C.components) {
      RModule X;
      for (std::size_t r = rng() % 3; r > 0; --r) X.orders.push_back(rng() % 2 ? n : n / 2);
      parts.push_back({tensor(X, comp.module), tensor(identity_map(X, n), comp.delta)});
    }
    auto X = assemble_comodule(parts, C);
    auto s = split_comodule(X, C);
    o.require(s.certificate.passed, "split certificate: " + s.certificate.counterexample);
    for (std::size_t k = 0; k < parts.size() && k < s.parts.size(); ++k)
      o.require(same_comodule(s.parts[k], parts[k]), "roundtrip trial " + std::to_string(trial));
  }
  double s = seconds_since(t);
  o.require(s < 60, "took " + std::to_string(s) + " s");
  if (o.passed) o.detail = std::to_string(all.size()) + " corings, " + std::to_string(found) + " Frobenius systems";
  return o;
}

Outcome determinism() {
  Outcome o;
  auto make = [](std::string c, std::string s, std::string file = {}) {
    RunOptions r;
    r.command = std::move(c);
    r.sub = std::move(s);
    if (!file.empty()) r.file = (root / file).string();
    return r;
  };
  for (const auto& opt : {make("check", "biproduct"), make("swindle", "run", "specs/swindle_invertible.spec"),
                          make("verdict", "finiteness"), make("coring", "frobenius", "fixtures/r2_z2.json"),
                          make("demo", "completed-family")}) {
    auto a = run_command(opt).to_json().dump(2);
    auto b = run_command(opt).to_json().dump(2);
    o.require(a == b, opt.command + " " + opt.sub + " differs between runs");
  }
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(root / "specs")) {
    if (entry.path().extension() != ".spec") continue;
    ++files;
    auto f = parse_spec(read_file(entry.path()));
    o.require(same_spec(parse_spec(print_spec(f)), f), "roundtrip " + entry.path().filename().string());
  }
  if (o.passed) o.detail = std::to_string(files) + " spec files";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"enrichment suite", enrichment},
      {"biproduct suite", biproducts},
      {"canonical map on finite families", canonical_maps},
      {"swindle suite", swindle},
      {"truncation cross-check", truncation},
      {"lattice consistency", lattice_consistency},
      {"coring suite", corings},
      {"CLI determinism and round-trip", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = e.what();
    }
    failed += !o.passed;
    std::printf("[%s] %zu %s: %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), seconds_since(t));
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
