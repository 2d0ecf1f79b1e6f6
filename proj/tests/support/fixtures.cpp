#include "fixtures.hpp"

#include "gpc/serialize.hpp"

namespace gpc::testing {

PropertyGraph g_tiny() {
  return load_graph(R"({
    "nodes": [{"id": "n1", "labels": ["A"], "properties": {"k": "5"}},
              {"id": "n2", "labels": ["B"], "properties": {"k": "5"}}],
    "directed_edges": [{"id": "e1", "src": "n1", "tgt": "n2", "labels": ["a"]}],
    "undirected_edges": [{"id": "u1", "endpoints": ["n2"]}]})");
}

PropertyGraph g_intro() {
  return load_graph(R"({
    "nodes": [{"id": "nA", "labels": ["A"]}, {"id": "nB", "labels": ["B"]},
              {"id": "nC", "labels": ["C"]}],
    "directed_edges": [{"id": "e1", "src": "nA", "tgt": "nC"},
                       {"id": "e2", "src": "nA", "tgt": "nB", "labels": ["a"]},
                       {"id": "e3", "src": "nC", "tgt": "nB"}]})");
}

PropertyGraph g_exp() {
  return load_graph(R"({
    "nodes": [{"id": "u"}, {"id": "v"}],
    "directed_edges": [{"id": "a1", "src": "u", "tgt": "v", "labels": ["a"]},
                       {"id": "a2", "src": "v", "tgt": "u", "labels": ["a"]},
                       {"id": "b1", "src": "u", "tgt": "v", "labels": ["b"]},
                       {"id": "b2", "src": "v", "tgt": "u", "labels": ["b"]}]})");
}

PropertyGraph k3() {
  return load_graph(R"({
    "nodes": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
    "directed_edges": [{"id": "ab", "src": "a", "tgt": "b"}, {"id": "ba", "src": "b", "tgt": "a"},
                       {"id": "bc", "src": "b", "tgt": "c"}, {"id": "cb", "src": "c", "tgt": "b"},
                       {"id": "ca", "src": "c", "tgt": "a"}, {"id": "ac", "src": "a", "tgt": "c"}]})");
}

PropertyGraph chain3() {
  return load_graph(R"({
    "nodes": [{"id": "n1"}, {"id": "n2"}, {"id": "n3"}],
    "directed_edges": [{"id": "e1", "src": "n1", "tgt": "n2"},
                       {"id": "e2", "src": "n2", "tgt": "n3"}]})");
}

}  // namespace gpc::testing
