#pragma once

// Property graphs and paths.
//
// A PropertyGraph is immutable once validated. Element ids are strings on the
// outside; internally nodes and edges are interned to dense indices. Directed
// edges occupy edge indices [0, directed_edge_count()) and undirected edges
// follow them.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace gpc {

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

// Property value. Equality is same-kind only: "5" and 5 are different.
using Constant = std::variant<std::string, std::int64_t, bool>;

std::string constant_to_text(const Constant& c);

using PropertyMap = std::map<std::string, Constant>;

struct RawNode {
  std::string id;
  std::vector<std::string> labels;
  PropertyMap properties;
};

struct RawDirectedEdge {
  std::string id;
  std::string src;
  std::string tgt;
  std::vector<std::string> labels;
  PropertyMap properties;
};

struct RawUndirectedEdge {
  std::string id;
  std::vector<std::string> endpoints;
  std::vector<std::string> labels;
  PropertyMap properties;
};

// Unvalidated graph, as read from a file or built by hand.
struct GraphDescription {
  std::vector<RawNode> nodes;
  std::vector<RawDirectedEdge> directed_edges;
  std::vector<RawUndirectedEdge> undirected_edges;
};

struct Violation {
  enum class Kind { DuplicateId, DanglingEndpoint, EndpointCount, EmptyId };
  Kind kind;
  std::string id;
  std::string message;
};

std::string_view violation_kind_name(Violation::Kind kind);

class PropertyGraph;

// Either a valid graph or every violation found.
using GraphOrViolations = std::variant<PropertyGraph, std::vector<Violation>>;

class PropertyGraph {
 public:
  PropertyGraph() = default;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t directed_edge_count() const { return directed_count_; }
  std::size_t undirected_edge_count() const { return edges_.size() - directed_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& node_name(NodeIndex n) const { return nodes_[n].id; }
  const std::string& edge_name(EdgeIndex e) const { return edges_[e].id; }

  std::optional<NodeIndex> find_node(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;

  bool is_directed(EdgeIndex e) const { return e < directed_count_; }

  // For directed edges: src/tgt. For undirected edges: the two endpoints,
  // ordered so that first <= second (equal for a self-loop).
  NodeIndex edge_source(EdgeIndex e) const { return edges_[e].a; }
  NodeIndex edge_target(EdgeIndex e) const { return edges_[e].b; }

  bool node_has_label(NodeIndex n, std::string_view label) const;
  bool edge_has_label(EdgeIndex e, std::string_view label) const;
  const std::vector<std::string>& node_labels(NodeIndex n) const { return nodes_[n].labels; }
  const std::vector<std::string>& edge_labels(EdgeIndex e) const { return edges_[e].labels; }

  const Constant* node_property(NodeIndex n, std::string_view key) const;
  const Constant* edge_property(EdgeIndex e, std::string_view key) const;

  // Edges with `n` as an endpoint (source, target or undirected endpoint).
  std::span<const EdgeIndex> incident_edges(NodeIndex n) const { return incidence_[n]; }

  friend GraphOrViolations validate_graph(const GraphDescription& description);

 private:
  struct NodeRecord {
    std::string id;
    std::vector<std::string> labels;
    PropertyMap properties;
  };
  struct EdgeRecord {
    std::string id;
    NodeIndex a = 0;
    NodeIndex b = 0;
    std::vector<std::string> labels;
    PropertyMap properties;
  };

  std::vector<NodeRecord> nodes_;
  std::vector<EdgeRecord> edges_;
  std::size_t directed_count_ = 0;
  std::unordered_map<std::string, NodeIndex> node_index_;
  std::unordered_map<std::string, EdgeIndex> edge_index_;
  std::vector<std::vector<EdgeIndex>> incidence_;
};

GraphOrViolations validate_graph(const GraphDescription& description);

// Alternating node/edge sequence u0 e1 u1 ... en un over one graph's indices.
// Always starts and ends with a node.
class Path {
 public:
  Path() : elements_{0} {}
  explicit Path(NodeIndex single) : elements_{single} {}
  // `elements` must have odd length; even positions are nodes.
  explicit Path(std::vector<std::uint32_t> elements);

  NodeIndex src() const { return elements_.front(); }
  NodeIndex tgt() const { return elements_.back(); }
  std::size_t len() const { return elements_.size() / 2; }

  // i-th node, 0 <= i <= len().
  NodeIndex node(std::size_t i) const { return elements_[2 * i]; }
  // i-th edge, 0 <= i < len(); it sits between node(i) and node(i + 1).
  EdgeIndex edge(std::size_t i) const { return elements_[2 * i + 1]; }

  std::span<const std::uint32_t> elements() const { return elements_; }

  // Portion from node position i to node position j (i <= j).
  Path subpath(std::size_t i, std::size_t j) const;

  bool is_trail() const;
  bool is_simple() const;

  auto operator<=>(const Path&) const = default;

 private:
  std::vector<std::uint32_t> elements_;
};

// p . q, or nullopt when tgt(p) != src(q).
std::optional<Path> concat(const Path& p, const Path& q);

// True iff every step is a forward, backward or undirected traversal in `g`.
bool path_is_valid(const PropertyGraph& g, const Path& p);

// Builds a path from external ids; nullopt on unknown ids or even length.
std::optional<Path> resolve_path(const PropertyGraph& g, std::span<const std::string> ids);
std::optional<Path> resolve_path(const PropertyGraph& g, std::initializer_list<std::string_view> ids);
std::vector<std::string> path_ids(const PropertyGraph& g, const Path& p);

}  // namespace gpc
