#include <filesystem>

#include <gtest/gtest.h>

#include "prodsum/pipelines.hpp"

using namespace prodsum;

namespace {

const std::filesystem::path root = PRODSUM_SOURCE_DIR;

RunOptions cmd(std::string command, std::string sub, std::string file = {}) {
  RunOptions o;
  o.command = std::move(command);
  o.sub = std::move(sub);
  if (!file.empty()) o.file = (root / file).string();
  return o;
}

const RunEntry* find(const RunReport& r, const std::string& name) {
  for (const auto& e : r.entries)
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace

TEST(Run, SwindleSpecProvesEverything) {
  auto r = run_command(cmd("swindle", "run", "specs/swindle.spec"));
  EXPECT_TRUE(r.passed()) << r.to_text();
  ASSERT_NE(find(r, "diagrams"), nullptr);
  ASSERT_NE(find(r, "key identities"), nullptr);
  EXPECT_EQ(find(r, "invertible f"), nullptr);
  EXPECT_EQ(r.entries.size(), 2u + 18u);
}

TEST(Run, InvertibleSpecRefutesF) {
  auto r = run_command(cmd("swindle", "run", "specs/swindle_invertible.spec"));
  EXPECT_TRUE(r.passed()) << r.to_text();
  const auto* e = find(r, "invertible f");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->detail["data"]["result"], "CONTRADICTION");
}

TEST(Run, FinitenessVerdicts) {
  auto o = cmd("verdict", "finiteness");
  o.model = "finab";
  o.truncate = "symbolic";
  auto sym = run_command(o);
  ASSERT_EQ(sym.entries.size(), 1u);
  EXPECT_EQ(sym.entries[0].summary, "NOT-ISO");
  EXPECT_TRUE(sym.entries[0].detail.contains("trace"));
  for (int n = 1; n <= 6; ++n) {
    o.truncate = std::to_string(n);
    auto fin = run_command(o);
    EXPECT_EQ(fin.entries[0].summary, "ISO") << n;
    EXPECT_EQ(fin.entries[0].detail["certificate"]["family"].size(), static_cast<std::size_t>(n));
  }
}

TEST(Run, FrobeniusPrintsSystem) {
  auto r = run_command(cmd("coring", "frobenius", "fixtures/r2_z2.json"));
  ASSERT_TRUE(r.passed());
  EXPECT_EQ(r.entries[0].summary, "e = [1 1], pi = [1 0 0 0 0 0 0 1]");
  auto none = run_command(cmd("coring", "frobenius", "fixtures/square_zero_dual_z2.json"));
  EXPECT_FALSE(none.passed());
}

TEST(Run, BrokenCoringNamesLaw) {
  auto r = run_command(cmd("coring", "check", "fixtures/broken_counit_z2.json"));
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.to_text().find("counit"), std::string::npos);
}

TEST(Run, EmptySpecIsVacuous) {
  auto r = run_command(cmd("chase", "prove", "specs/empty.spec"));
  EXPECT_TRUE(r.passed());
}

TEST(Run, Errors) {
  EXPECT_THROW(run_command(cmd("chase", "disprove")), UnknownCommand);
  EXPECT_THROW(run_command(cmd("chase", "prove", "specs/missing.spec")), FileNotFound);
  auto o = cmd("demo", "completed-family");
  o.model = "finab";
  EXPECT_THROW(run_command(o), ModelUnsupported);
  auto t = cmd("verdict", "finiteness");
  t.truncate = "many";
  EXPECT_THROW(run_command(t), ShapeMismatch);
  auto c = cmd("coring", "verdict");
  c.ring = 1;
  EXPECT_THROW(run_command(c), InvalidObject);
}

TEST(Determinism, SameSeedSameBytes) {
  for (auto o : {cmd("check", "biproduct"), cmd("swindle", "run", "specs/swindle_invertible.spec"),
                 cmd("coring", "check", "fixtures/sweedler_sum_z2.json"), cmd("demo", "completed-family")}) {
    auto a = run_command(o).to_json().dump(2);
    auto b = run_command(o).to_json().dump(2);
    EXPECT_EQ(a, b) << o.command << " " << o.sub;
  }
}

TEST(Determinism, SeedDrivesSampling) {
  auto o = cmd("verdict", "finiteness");
  o.model = "finab";
  o.truncate = "6";
  auto a = run_command(o).to_json();
  o.seed = 7;
  auto b = run_command(o).to_json();
  EXPECT_EQ(b["seed"], 7);
  EXPECT_NE(a["results"][0]["detail"]["certificate"]["family"], b["results"][0]["detail"]["certificate"]["family"]);
}
