#include <gtest/gtest.h>

#include "gen.hpp"
#include "gpc/typing.hpp"

using namespace gpc;
namespace gt = gpc::testing;

namespace {

std::map<std::string, std::string> schema_text(const Schema& s) {
  std::map<std::string, std::string> out;
  for (const auto& [x, t] : s) out.emplace(x, to_string(t));
  return out;
}

std::map<std::string, std::string> schema_of(std::string_view pattern) {
  return schema_text(infer_schema(*parse_pattern(pattern)));
}

TypeError::Kind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const TypeError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no TypeError";
  return TypeError::Kind::ConflictingTypes;
}

using M = std::map<std::string, std::string>;

}  // namespace

TEST(MaybeWrap, Idempotent) {
  EXPECT_EQ(to_string(maybe_wrap(Type::node())), "Maybe(Node)");
  EXPECT_EQ(to_string(maybe_wrap(Type::maybe(Type::edge()))), "Maybe(Edge)");
  EXPECT_EQ(to_string(maybe_wrap(Type::group(Type::node()))), "Maybe(Group(Node))");
}

TEST(InferSchema, Examples) {
  EXPECT_EQ(schema_of("(x) -[y]-> ()"), (M{{"x", "Node"}, {"y", "Edge"}}));
  EXPECT_EQ(schema_of("[-[y]->]{1..3}"), (M{{"y", "Group(Edge)"}}));
  EXPECT_EQ(schema_of("[(x)-[e]->()] + [(x)]"), (M{{"x", "Node"}, {"e", "Maybe(Edge)"}}));
  EXPECT_EQ(schema_of("[[(x)] + [()]] + [()]"), (M{{"x", "Maybe(Node)"}}));
  EXPECT_EQ(schema_of("[[(x)]+[()]]{0..}"), (M{{"x", "Group(Maybe(Node))"}}));
  EXPECT_EQ(schema_of("[[-[e]->]{1..}]{2..}"), (M{{"e", "Group(Group(Edge))"}}));
  EXPECT_EQ(schema_text(infer_schema(*parse_query("p = SHORTEST (x)"))), (M{{"p", "Path"}, {"x", "Node"}}));
}

TEST(InferSchema, Errors) {
  EXPECT_EQ(error_kind([] { infer_schema(*parse_pattern("(x) -[x]-> ()")); }),
            TypeError::Kind::ConflictingTypes);
  EXPECT_EQ(error_kind([] { infer_schema(*parse_query("p = SHORTEST (p)")); }),
            TypeError::Kind::PathVariableReuse);
  EXPECT_EQ(error_kind([] { infer_schema(*parse_pattern("[-[y]->{1..2}] <y.a = \"1\">")); }),
            TypeError::Kind::ConditionOverNonSingleton);
  EXPECT_EQ(error_kind([] { infer_schema(*parse_pattern("[(x)]{1..} (x)")); }),
            TypeError::Kind::NonSingletonJoin);
  EXPECT_EQ(error_kind([] { infer_schema(*parse_pattern("[[(x)] + [()]] (x)")); }),
            TypeError::Kind::NonSingletonJoin);
  EXPECT_EQ(error_kind([] { infer_schema(*parse_pattern("[(x)] + [-[x]->]")); }),
            TypeError::Kind::ConflictingTypes);
  EXPECT_EQ(error_kind([] { infer_schema(*parse_query("SHORTEST [(x)]{1..}, SHORTEST (x)")); }),
            TypeError::Kind::NonSingletonJoin);
}

TEST(InferSchema, TypeErrorCarriesLocation) {
  try {
    infer_schema(*parse_pattern("(y) [(x) -[x]-> ()]"));
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_EQ(e.variable(), "x");
    EXPECT_NE(e.location().find("-[x]->"), std::string::npos);
  }
}

TEST(CheckCondition, Examples) {
  EXPECT_NO_THROW(check_condition(*parse_pattern("(x:A)->(z:B)"),
                                  *Condition::prop_eq_prop("x", "k", "z", "k")));
  EXPECT_EQ(error_kind([] {
              check_condition(*parse_pattern("(x)"),
                              *Condition::prop_eq_const("y", "k", std::string("1")));
            }),
            TypeError::Kind::UnboundConditionVariable);
  EXPECT_EQ(error_kind([] {
              check_condition(*parse_pattern("[-[g]->]{0..}"),
                              *Condition::prop_eq_const("g", "k", std::string("1")));
            }),
            TypeError::Kind::ConditionOverNonSingleton);
  EXPECT_EQ(error_kind([] { infer_schema(*parse_pattern("[[(x)] + [()]]<x.k = 1>")); }),
            TypeError::Kind::ConditionOverNonSingleton);
}

TEST(EdgelessAnalysis, Examples) {
  EXPECT_FALSE(may_match_edgeless(*parse_pattern("-[:a]->")));
  EXPECT_TRUE(may_match_edgeless(*parse_pattern("()")));
  EXPECT_TRUE(may_match_edgeless(*parse_pattern("[-[:a]->]{0..}")));
  EXPECT_FALSE(may_match_edgeless(*parse_pattern("[()] [-[:a]->]")));
  EXPECT_TRUE(may_match_edgeless(*parse_pattern("[->] + [()]")));
  EXPECT_FALSE(may_match_edgeless(*parse_pattern("->{2..5}")));
}

TEST(ValidateForMode, Examples) {
  auto p = parse_pattern("[()]{0..}");
  EXPECT_THROW(validate_for_mode(*p, CollectMode::Syntactic), TypeError);
  EXPECT_NO_THROW(validate_for_mode(*p, CollectMode::Grouping));
  EXPECT_NO_THROW(validate_for_mode(*p, CollectMode::Dynamic));
  EXPECT_NO_THROW(validate_for_mode(*parse_pattern("[-[:a]->]{2..5}"), CollectMode::Syntactic));
  EXPECT_THROW(validate_for_mode(*parse_pattern("[->[()]{0..1}]{1..}"), CollectMode::Syntactic), TypeError);
}

TEST(TypingProperty, Compositionality) {
  // Replacing an operand by a schema-equal expression leaves the schema unchanged.
  gt::Rng rng(17);
  gt::PatternShape shape;
  shape.max_depth = 2;
  std::map<std::map<std::string, std::string>, PatternPtr> representative;
  int substitutions = 0;
  for (int i = 0; i < 3000; ++i) {
    auto a = gt::random_typed_pattern(rng, shape);
    auto key = schema_text(infer_schema(*a));
    auto [it, fresh] = representative.emplace(key, a);
    if (fresh) continue;
    auto b = gt::random_pattern(rng, shape);
    for (auto op : {Pattern::alt, Pattern::concat}) {
      std::optional<M> with_a, with_rep;
      try {
        with_a = schema_text(infer_schema(*op(a, b)));
      } catch (const TypeError&) {
      }
      try {
        with_rep = schema_text(infer_schema(*op(it->second, b)));
      } catch (const TypeError&) {
      }
      EXPECT_EQ(with_a, with_rep) << render(*a) << " vs " << render(*it->second) << " with " << render(*b);
      ++substitutions;
    }
  }
  EXPECT_GT(substitutions, 1000);
}
