#include <gtest/gtest.h>

#include "pground/error.hpp"
#include "pground/model.hpp"
#include "pground/parser.hpp"

namespace pground {
namespace {

std::optional<std::string> unsafe_variable(const std::string& text) {
  Vocabulary v;
  Rule rule = parse_rule(text, v);
  auto bad = check_safety(rule);
  if (!bad) return std::nullopt;
  return rule.variables[*bad];
}

TEST(CheckSafety, DisjunctiveGuessRuleIsSafe) {
  EXPECT_EQ(unsafe_variable("col(X,red) | col(X,yellow) | col(X,green) :- node(X)."), std::nullopt);
}

TEST(CheckSafety, FactWithVariable) { EXPECT_EQ(unsafe_variable("p(X)."), "X"); }

TEST(CheckSafety, VariableOnlyInNegativeLiteral) {
  EXPECT_EQ(unsafe_variable(":- edge(X,Y), not col(Y,C)."), "C");
}

TEST(CheckSafety, FirstOffenderInTextOrder) {
  EXPECT_EQ(unsafe_variable("p(B,A) :- q(C), not r(A)."), "B");
}

TEST(ClassifyPredicates, ThreeColoring) {
  Program p = parse_program(
      "col(X,red) | col(X,yellow) | col(X,green) :- node(X).\n"
      ":- edge(X,Y), col(X,C), col(Y,C).\n"
      "node(a). node(b). edge(a,b).\n");
  std::set<PredicateId> edb{*p.vocabulary.predicates.find("node"), *p.vocabulary.predicates.find("edge")};
  std::set<PredicateId> idb{*p.vocabulary.predicates.find("col")};
  EXPECT_EQ(p.edb_predicates, edb);
  EXPECT_EQ(p.idb_predicates, idb);
  EXPECT_EQ(p.edb.size(), 3u);
  EXPECT_EQ(p.rules.size(), 2u);
}

TEST(ClassifyPredicates, EmptyProgram) {
  Program p = parse_program("");
  EXPECT_TRUE(p.edb_predicates.empty());
  EXPECT_TRUE(p.idb_predicates.empty());
}

TEST(ClassifyPredicates, FactOverIdbPredicateStaysARule) {
  Program p = parse_program("q(a). q(X) :- p(X). p(b).");
  EXPECT_EQ(p.edb_predicates, std::set<PredicateId>{*p.vocabulary.predicates.find("p")});
  EXPECT_EQ(p.idb_predicates, std::set<PredicateId>{*p.vocabulary.predicates.find("q")});
  ASSERT_EQ(p.edb.size(), 1u);
  ASSERT_EQ(p.rules.size(), 2u);
  EXPECT_TRUE(p.rules[0].is_fact());
  EXPECT_EQ(p.rules[0].id, 0u);
  EXPECT_EQ(p.rules[1].id, 1u);
}

TEST(ClassifyPredicates, PartitionCoversEveryPredicate) {
  Program p = parse_program("a :- b, not c. c | d :- e. e. f :- a.");
  std::set<PredicateId> all;
  for (PredicateId id = 0; id < p.vocabulary.predicates.size(); ++id) all.insert(id);
  std::set<PredicateId> joined = p.edb_predicates;
  for (auto id : p.idb_predicates) EXPECT_TRUE(joined.insert(id).second);
  EXPECT_EQ(joined, all);
}

TEST(ClassifyPredicates, DuplicateFactsCollapse) {
  Program p = parse_program("e(a). e(b). e(a).");
  EXPECT_EQ(p.edb.size(), 2u);
}

TEST(Substitute, ConstraintInstance) {
  Program p = parse_program(":- edge(X,Y), col(X,C), col(Y,C). col(X,red) :- node(X).");
  const Rule& c = p.rules[0];
  auto& s = p.vocabulary.symbols;
  std::vector<Symbol> values{s.intern("a"), s.intern("b"), s.intern("red")};
  EXPECT_EQ(render_rule(substitute(c, values), p.vocabulary), ":- edge(a,b), col(a,red), col(b,red).");
}

TEST(Substitute, GroundRuleIsUnchanged) {
  Vocabulary v;
  Rule r = parse_rule("p(a) | q(b) :- r(c), not s(d).", v);
  EXPECT_EQ(render_rule(substitute(r, {}), v), "p(a) | q(b) :- r(c), not s(d).");
  std::vector<Symbol> unrelated{v.symbols.intern("zz")};
  EXPECT_EQ(substitute(r, unrelated), substitute(r, {}));
}

TEST(Substitute, ExitRule) {
  Vocabulary v;
  Rule r = parse_rule("reach(X,Y) :- edge(X,Y).", v);
  std::vector<Symbol> values{v.symbols.intern("1"), v.symbols.intern("2")};
  EXPECT_EQ(render_rule(substitute(r, values), v), "reach(1,2) :- edge(1,2).");
}

TEST(Substitute, UnboundVariableThrows) {
  Vocabulary v;
  Rule r = parse_rule("reach(X,Y) :- edge(X,Y).", v);
  std::vector<Symbol> values{v.symbols.intern("1"), kUnbound};
  EXPECT_THROW(substitute(r, values), UnboundVariable);
  EXPECT_THROW(substitute(r, std::span<const Symbol>(values).first(1)), UnboundVariable);
}

TEST(GroundRule, AccessorsMatchConstruction) {
  Vocabulary v;
  GroundAtom h{v.predicates.intern("p", 1), {v.symbols.intern("a")}};
  GroundLiteral b{true, {v.predicates.intern("q", 0), {}}};
  GroundRule r(std::span<const GroundAtom>(&h, 1), std::span<const GroundLiteral>(&b, 1));
  EXPECT_EQ(r.head_size(), 1u);
  EXPECT_EQ(r.body_size(), 1u);
  EXPECT_EQ(r.head()[0], h);
  EXPECT_EQ(r.body()[0], b);
  EXPECT_FALSE(r.is_constraint());
}

TEST(GroundProgram, SetSemantics) {
  Vocabulary v;
  GroundProgram a = parse_ground_program("p :- q. r. p :- q.", v);
  GroundProgram b = parse_ground_program("r. p :- q.", v);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a, b);
}

TEST(Predicates, ArityClashIsRejected) {
  EXPECT_THROW(parse_program("p(a). q :- p(a,b)."), ArityMismatch);
}

}  // namespace
}  // namespace pground
