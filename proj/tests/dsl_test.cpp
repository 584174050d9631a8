#include <filesystem>

#include <gtest/gtest.h>

#include "prodsum/dsl.hpp"
#include "prodsum/pipelines.hpp"
#include "prodsum/swindle.hpp"

using namespace prodsum;

namespace {

const std::filesystem::path root = PRODSUM_SOURCE_DIR;

SpecFile with_goals(const Presentation& P) {
  SpecFile f{P, {}};
  for (const auto& g : panel_goals(P)) f.goals.push_back({g.name, g.lhs, g.rhs});
  for (const auto& g : inverse_goals(P)) f.goals.push_back({g.name, g.lhs, g.rhs});
  return f;
}

ParseError parse_error(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for: " << text;
  return ParseError(0, 0, "");
}

}  // namespace

TEST(Parse, DeltaRelation) {
  auto f = parse_spec(
      "object A;\n"
      "object P = product(A[n]) via p;\n"
      "object Q = coproduct(A[n]) via sigma;\n"
      "mor Lambda : Q -> P;\n"
      "rel p[n].Lambda.sigma[m] = id(A) when delta(n,m);\n");
  ASSERT_EQ(f.pres.relations.size(), 1u);
  const auto& r = f.pres.relations[0];
  EXPECT_EQ(r.label, "r1");
  EXPECT_EQ(r.lhs.str(), "p[n].Lambda.sigma[m]");
  EXPECT_EQ(r.rhs.str(), "id(A)");
  ASSERT_TRUE(r.delta);
  EXPECT_EQ(r.delta->i, IndexExpr::variable("n"));
  EXPECT_EQ(r.delta->j, IndexExpr::variable("m"));
  EXPECT_EQ(r.index_vars(), (std::set<std::string>{"m", "n"}));
  ASSERT_EQ(f.pres.products.size(), 1u);
  EXPECT_TRUE(f.pres.products[0].indexed);
  EXPECT_EQ(f.pres.products[0].family, "p");
}

TEST(Parse, DeltaRelationDrivesTheProver) {
  auto f = parse_spec(read_file(root / "specs" / "delta_family.spec"));
  ASSERT_EQ(f.goals.size(), 2u);
  for (const auto& g : f.goals) {
    auto res = prove_equal(g.lhs, g.rhs, f.pres);
    EXPECT_TRUE(res.proved()) << g.name << ": " << res.reason;
  }
  // the diagonal value must not also equal zero
  auto wrong = prove_equal(f.goals[0].lhs, f.pres.zero("A", "A"), f.pres);
  EXPECT_FALSE(wrong.proved());
}

TEST(Parse, EmptyText) {
  for (const char* text : {"", "   \n\n", "# only a comment\n// and another\n"}) {
    auto f = parse_spec(text);
    EXPECT_TRUE(f.pres.objects.empty());
    EXPECT_TRUE(f.pres.generators.empty());
    EXPECT_TRUE(f.pres.relations.empty());
    EXPECT_TRUE(f.goals.empty());
    EXPECT_EQ(print_spec(f), "");
  }
}

TEST(Parse, MissingCodomainPointsAtSemicolon) {
  auto e = parse_error("object A;\nmor f : A -> ;\n");
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.col(), 14);
  EXPECT_EQ(e.expected(), "codomain object");
}

TEST(Parse, UnknownKeywordHasPosition) {
  auto e = parse_error("object A;\n\n  morphism f : A -> A;\n");
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.col(), 3);
  EXPECT_NE(e.expected().find("declaration keyword"), std::string::npos);
}

TEST(Parse, ColumnsCountCodePoints) {
  // ℕ is three bytes but one column
  auto e = parse_error("object A;\nmor ℕ : A -> A;\n");
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.col(), 5);
}

TEST(Parse, SemanticErrorsCarryPosition) {
  auto undeclared = parse_error("object A;\nmor f : A -> B;\n");
  EXPECT_EQ(undeclared.line(), 2);
  auto unparallel = parse_error("object A;\nobject B;\nmor f : A -> B;\ngoal f = id(A);\n");
  EXPECT_EQ(unparallel.line(), 4);
  auto model = parse_error("object A;\nmodel groups A = Z/2;\n");
  EXPECT_EQ(model.line(), 2);
  EXPECT_EQ(model.col(), 7);
}

TEST(Parse, PrecedenceAndGrouping) {
  auto f = parse_spec(
      "object A;\nmor f : A -> A;\nmor g : A -> A;\n"
      "goal a: f.g + g = (f.g) + g;\n"
      "goal b: f.(g + g) = f.g + f.g;\n");
  ASSERT_EQ(f.goals.size(), 2u);
  EXPECT_EQ(f.goals[0].lhs.str(), f.goals[0].rhs.str());
  EXPECT_TRUE(prove_equal(f.goals[1].lhs, f.goals[1].rhs, f.pres).proved());
}

TEST(Roundtrip, ShippedSpecFiles) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(root / "specs")) {
    if (entry.path().extension() != ".spec") continue;
    ++seen;
    auto f = parse_spec(read_file(entry.path()));
    auto printed = print_spec(f);
    auto back = parse_spec(printed);
    EXPECT_TRUE(same_spec(f, back)) << entry.path();
    EXPECT_EQ(print_spec(back), printed) << entry.path();
  }
  EXPECT_GE(seen, 5u);
}

TEST(Roundtrip, SwindleFilesMatchBuiltPresentation) {
  auto plain = parse_spec(read_file(root / "specs" / "swindle.spec"));
  EXPECT_TRUE(same_spec(plain, with_goals(build_swindle_presentation())));
  Hypothesis h;
  h.invertible_f = Hypothesis::InvertibleF{};
  auto inv = parse_spec(read_file(root / "specs" / "swindle_invertible.spec"));
  EXPECT_TRUE(same_spec(inv, with_goals(build_swindle_presentation(h))));
  EXPECT_EQ(count_swindle_generators(plain.pres), 20u);
  EXPECT_EQ(count_swindle_relations(plain.pres), 16u);
}

TEST(Roundtrip, PrintedPresentationsForEveryHypothesis) {
  for (bool iso : {true, false})
    for (bool idem : {false, true})
      for (bool inv : {false, true}) {
        Hypothesis h;
        h.lambda_is_iso = iso;
        h.idempotent_homs = idem;
        if (inv) h.invertible_f = Hypothesis::InvertibleF{};
        auto f = with_goals(build_swindle_presentation(h));
        EXPECT_TRUE(same_spec(parse_spec(print_spec(f)), f)) << iso << idem << inv;
      }
}
