#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gen.hpp"
#include "gpc/eval.hpp"
#include "gpc/oracle.hpp"

using namespace gpc;
namespace gt = gpc::testing;

namespace {

Path path_of(const PropertyGraph& g, std::vector<std::string> ids) { return *resolve_path(g, ids); }

oracle::NodePairs pairs(const PropertyGraph& g, std::vector<std::pair<std::string, std::string>> named) {
  oracle::NodePairs out;
  for (const auto& [a, b] : named) out.insert({*g.find_node(a), *g.find_node(b)});
  return out;
}

}  // namespace

TEST(EnumeratePaths, Counts) {
  auto g = gt::g_exp();
  EXPECT_EQ(oracle::enumerate_paths(g, 0).size(), 2u);
  EXPECT_EQ(oracle::enumerate_paths(g, 1).size(), 10u);
  auto single = gt::graph_from_json(R"({"nodes":[{"id":"a"},{"id":"b"}],
    "directed_edges":[{"id":"e","src":"a","tgt":"b"}]})");
  EXPECT_EQ(oracle::enumerate_paths(single, 1),
            (std::vector<Path>{path_of(single, {"a"}), path_of(single, {"a", "e", "b"}), path_of(single, {"b"}),
                               path_of(single, {"b", "e", "a"})}));
  std::size_t previous = 0;
  for (std::uint64_t L = 0; L <= 4; ++L) {
    auto paths = oracle::enumerate_paths(g, L);
    EXPECT_GT(paths.size(), previous);
    for (const auto& p : paths) EXPECT_TRUE(path_is_valid(g, p));
    previous = paths.size();
  }
}

TEST(EnumeratePaths, Budget) {
  auto g = gt::g_exp();
  EXPECT_THROW(oracle::enumerate_paths(g, 5, oracle::Budget{4, 1000000}), oracle::BudgetExceeded);
  EXPECT_THROW(oracle::enumerate_paths(g, 4, oracle::Budget{4, 50}), oracle::BudgetExceeded);
}

TEST(BruteForce, SimplePathsOfK3) {
  auto g = gt::k3();
  oracle::Options opt;
  opt.max_len = 3;
  EXPECT_EQ(oracle::brute_force_query(g, *parse_query("SIMPLE ->{0..}"), opt).size(), 15u);
  EXPECT_EQ(oracle::brute_force_query(g, *parse_query("SIMPLE ->{0..}")).size(), 15u);
}

TEST(NaiveMatch, Examples) {
  auto g = gt::g_tiny();
  auto n1 = path_of(g, {"n1"});
  EXPECT_EQ(oracle::naive_match(g, *parse_pattern("()"), n1), (std::set<Assignment>{Assignment{}}));
  Value v = Value::node(*g.find_node("n1"));
  EXPECT_EQ(oracle::naive_match(g, *parse_pattern("(x)(y)"), n1),
            (std::set<Assignment>{{{"x", v}, {"y", v}}}));
  EXPECT_TRUE(oracle::naive_match(g, *parse_pattern("[-[g]->]{0..0}"), path_of(g, {"n1", "e1", "n2"})).empty());
  EXPECT_EQ(oracle::naive_match(g, *parse_pattern("[-[g]->]{0..0}"), n1),
            (std::set<Assignment>{{{"g", Value::group({})}}}));
}

TEST(NaiveMatch, AgreesWithEngine) {
  gt::Rng rng(53);
  gt::PatternShape shape;
  for (int i = 0; i < 150; ++i) {
    auto g = gt::random_graph(rng);
    auto pat = gt::random_typed_pattern(rng, shape);
    EvalConfig cfg;
    cfg.max_len = 2;
    std::map<Path, std::set<Assignment>> engine;
    for (const auto& m : eval_pattern(g, *pat, cfg)) engine[m.path].insert(m.mu);
    for (const auto& p : oracle::enumerate_paths(g, 2)) {
      auto expected = oracle::naive_match(g, *pat, p);
      auto it = engine.find(p);
      EXPECT_EQ(it == engine.end() ? std::set<Assignment>{} : it->second, expected) << render(*pat);
    }
  }
}

TEST(Product2rpq, TinyExamples) {
  auto g = gt::g_tiny();
  EXPECT_EQ(oracle::product_2rpq(g, *parse_nre("a")), pairs(g, {{"n1", "n2"}}));
  EXPECT_EQ(oracle::product_2rpq(g, *parse_nre("a^-")), pairs(g, {{"n2", "n1"}}));
  EXPECT_EQ(oracle::product_2rpq(g, *parse_nre("a.a^-")), pairs(g, {{"n1", "n1"}}));
  EXPECT_TRUE(oracle::product_2rpq(g, *parse_nre("b")).empty());
}

TEST(Product2rpq, StarIncludesEmptyWord) {
  auto g = gt::g_tiny();
  EXPECT_EQ(oracle::product_2rpq(g, *parse_nre("a*")), pairs(g, {{"n1", "n1"}, {"n2", "n2"}, {"n1", "n2"}}));
}

TEST(RecursiveNre, NestedExample) {
  auto g = gt::graph_from_json(R"({"nodes":[{"id":"n0"},{"id":"n1"},{"id":"n2"},{"id":"n3"},{"id":"n4"}],
    "directed_edges":[{"id":"e0","src":"n0","tgt":"n1","labels":["a"]},
                      {"id":"e1","src":"n1","tgt":"n2","labels":["b"]},
                      {"id":"e2","src":"n1","tgt":"n3","labels":["c"]},
                      {"id":"e3","src":"n3","tgt":"n4","labels":["a"]},
                      {"id":"e4","src":"n4","tgt":"n0","labels":["c"]}]})");
  auto e = parse_nre("(a.[b+].c)+");
  EXPECT_EQ(oracle::recursive_nre(g, *e), pairs(g, {{"n0", "n3"}}));
  EXPECT_EQ(oracle::recursive_nre(g, *parse_nre("a.c")), pairs(g, {{"n0", "n3"}, {"n3", "n0"}}));
}

TEST(RecursiveNre, AgreesWithProductOnRegexes) {
  gt::Rng rng(59);
  for (int i = 0; i < 100; ++i) {
    auto g = gt::random_labeled_digraph(rng, 5, 8);
    auto r = gt::random_regex(rng, 3);
    EXPECT_EQ(oracle::recursive_nre(g, *r), oracle::product_2rpq(g, *r)) << render(*r);
  }
}
