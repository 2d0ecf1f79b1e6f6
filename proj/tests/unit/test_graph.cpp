#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gen.hpp"
#include "gpc/oracle.hpp"
#include "gpc/serialize.hpp"

using namespace gpc;
namespace gt = gpc::testing;

namespace {

std::vector<Violation> violations_of(const GraphDescription& d) {
  auto r = validate_graph(d);
  if (auto* v = std::get_if<std::vector<Violation>>(&r)) return *v;
  return {};
}

bool has_kind(const std::vector<Violation>& vs, Violation::Kind k) {
  for (const auto& v : vs) {
    if (v.kind == k) return true;
  }
  return false;
}

}  // namespace

TEST(Graph, EmptyDescriptionIsValid) {
  auto r = validate_graph(GraphDescription{});
  ASSERT_TRUE(std::holds_alternative<PropertyGraph>(r));
  EXPECT_EQ(std::get<PropertyGraph>(r).node_count(), 0u);
}

TEST(Graph, DanglingEndpoint) {
  GraphDescription d;
  d.nodes.push_back({"n1", {}, {}});
  d.directed_edges.push_back({"e1", "n1", "nX", {}, {}});
  EXPECT_TRUE(has_kind(violations_of(d), Violation::Kind::DanglingEndpoint));
}

TEST(Graph, UndirectedSelfLoopAccepted) {
  GraphDescription d;
  d.nodes.push_back({"n2", {}, {}});
  d.undirected_edges.push_back({"u1", {"n2"}, {}, {}});
  EXPECT_TRUE(violations_of(d).empty());
}

TEST(Graph, ReportsEveryViolation) {
  GraphDescription d;
  d.nodes.push_back({"n1", {}, {}});
  d.nodes.push_back({"n1", {}, {}});
  d.nodes.push_back({"", {}, {}});
  d.undirected_edges.push_back({"u1", {"n1", "n1", "n1"}, {}, {}});
  d.directed_edges.push_back({"n1", "n1", "n1", {}, {}});
  auto vs = violations_of(d);
  EXPECT_TRUE(has_kind(vs, Violation::Kind::DuplicateId));
  EXPECT_TRUE(has_kind(vs, Violation::Kind::EmptyId));
  EXPECT_TRUE(has_kind(vs, Violation::Kind::EndpointCount));
}

TEST(Graph, LoadGraphRejectsBadJson) {
  EXPECT_THROW(load_graph("{"), GraphError);
  EXPECT_THROW(load_graph(R"({"nodes":[{"id":"n","properties":{"k":1.5}}]})"), GraphError);
  EXPECT_THROW(load_graph(R"({"nodes":[{"id":"n"}],"undirected_edges":[{"id":"u","endpoints":[]}]})"),
               GraphError);
  try {
    load_graph(R"({"nodes":[{"id":"a"}],"directed_edges":[{"id":"e","src":"a","tgt":"b"}]})");
    FAIL();
  } catch (const GraphError& e) {
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_EQ(e.violations()[0].kind, Violation::Kind::DanglingEndpoint);
  }
}

TEST(Graph, TypedPropertiesCompareByKind) {
  auto g = load_graph(R"({"nodes":[{"id":"n","properties":{"s":"5","i":5,"b":true}}]})");
  NodeIndex n = *g.find_node("n");
  EXPECT_EQ(*g.node_property(n, "s"), Constant(std::string("5")));
  EXPECT_EQ(*g.node_property(n, "i"), Constant(std::int64_t{5}));
  EXPECT_NE(*g.node_property(n, "s"), *g.node_property(n, "i"));
  EXPECT_EQ(*g.node_property(n, "b"), Constant(true));
  EXPECT_EQ(g.node_property(n, "missing"), nullptr);
}

TEST(Path, Validity) {
  auto g = gt::g_tiny();
  EXPECT_TRUE(path_is_valid(g, *resolve_path(g, {"n1"})));
  EXPECT_TRUE(path_is_valid(g, *resolve_path(g, {"n1", "e1", "n2"})));
  EXPECT_TRUE(path_is_valid(g, *resolve_path(g, {"n2", "e1", "n1"})));
  EXPECT_TRUE(path_is_valid(g, *resolve_path(g, {"n2", "u1", "n2"})));
  EXPECT_FALSE(path_is_valid(g, *resolve_path(g, {"n1", "e1", "n1"})));
  EXPECT_FALSE(path_is_valid(g, *resolve_path(g, {"n1", "u1", "n2"})));
  EXPECT_FALSE(resolve_path(g, {"n1", "e1"}).has_value());
  EXPECT_FALSE(resolve_path(g, {"nope"}).has_value());
}

TEST(Path, Accessors) {
  auto g = gt::chain3();
  auto p = *resolve_path(g, {"n1", "e1", "n2", "e2", "n3"});
  EXPECT_EQ(p.len(), 2u);
  EXPECT_EQ(g.node_name(p.src()), "n1");
  EXPECT_EQ(g.node_name(p.tgt()), "n3");
  EXPECT_EQ(p.subpath(1, 2), *resolve_path(g, {"n2", "e2", "n3"}));
  EXPECT_EQ(p.subpath(1, 1), *resolve_path(g, {"n2"}));
  auto loop = *resolve_path(gt::g_tiny(), {"n1", "e1", "n2", "e1", "n1"});
  EXPECT_EQ(loop.len(), 2u);
  EXPECT_EQ(loop.src(), loop.tgt());
  EXPECT_FALSE(loop.is_trail());
  EXPECT_FALSE(loop.is_simple());
}

TEST(Path, Concatenation) {
  auto g = gt::chain3();
  auto p = *resolve_path(g, {"n1", "e1", "n2"});
  auto q = *resolve_path(g, {"n2", "e2", "n3"});
  EXPECT_EQ(*concat(p, *resolve_path(g, {"n2"})), p);
  EXPECT_EQ(*concat(*resolve_path(g, {"n1"}), p), p);
  EXPECT_EQ(*concat(p, q), *resolve_path(g, {"n1", "e1", "n2", "e2", "n3"}));
  EXPECT_FALSE(concat(p, *resolve_path(g, {"n3"})).has_value());
}

TEST(Path, SimpleMeansNoRepeatedNode) {
  auto g = gt::k3();
  EXPECT_TRUE(resolve_path(g, {"a", "ab", "b", "bc", "c"})->is_simple());
  EXPECT_FALSE(resolve_path(g, {"a", "ab", "b", "bc", "c", "ca", "a"})->is_simple());
  EXPECT_TRUE(resolve_path(g, {"a", "ab", "b", "bc", "c", "ca", "a"})->is_trail());
  EXPECT_FALSE(resolve_path(g, {"a", "ab", "b", "ba", "a", "ac", "c"})->is_simple());
}

TEST(PathProperty, AlgebraicLaws) {
  gt::Rng rng(11);
  int concatenated = 0;
  for (int i = 0; i < 200; ++i) {
    auto g = gt::random_graph(rng);
    auto paths = oracle::enumerate_paths(g, 2);
    for (int k = 0; k < 30; ++k) {
      const Path& p = paths[rng() % paths.size()];
      const Path& q = paths[rng() % paths.size()];
      const Path& r = paths[rng() % paths.size()];
      EXPECT_EQ(*concat(Path(p.src()), p), p);
      EXPECT_EQ(*concat(p, Path(p.tgt())), p);
      auto pq = concat(p, q);
      if (!pq) continue;
      ++concatenated;
      EXPECT_TRUE(path_is_valid(g, *pq));
      EXPECT_EQ(pq->len(), p.len() + q.len());
      auto qr = concat(q, r);
      if (!qr) continue;
      EXPECT_EQ(concat(*pq, r), concat(p, *qr));
    }
  }
  EXPECT_GT(concatenated, 100);
}

TEST(Serialize, PathAndValues) {
  auto g = gt::g_tiny();
  auto p = *resolve_path(g, {"n1", "e1", "n2"});
  EXPECT_EQ(path_to_json(g, p), R"({"elements":["n1","e1","n2"]})");
  EXPECT_EQ(value_to_json(g, Value::nothing()), R"({"kind":"nothing"})");
  EXPECT_EQ(value_to_json(g, Value::node(0)), R"({"kind":"node","id":"n1"})");
  EXPECT_EQ(value_to_json(g, Value::edge(*g.find_edge("e1"))), R"({"kind":"edge","id":"e1"})");
  EXPECT_EQ(value_to_json(g, Value::of_path(p)), R"({"kind":"path","elements":["n1","e1","n2"]})");
  EXPECT_EQ(value_to_json(g, Value::group({GroupItem{p, Value::edge(*g.find_edge("e1"))}})),
            R"({"kind":"group","items":[[{"elements":["n1","e1","n2"]},{"kind":"edge","id":"e1"}]]})");
}
