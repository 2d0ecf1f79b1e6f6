#include "gpc/graph.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace gpc {

std::string constant_to_text(const Constant& c) {
  if (const auto* s = std::get_if<std::string>(&c)) {
    std::string out = "\"";
    for (char ch : *s) {
      if (ch == '"' || ch == '\\') out.push_back('\\');
      out.push_back(ch);
    }
    out.push_back('"');
    return out;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<bool>(c) ? "true" : "false";
}

std::string_view violation_kind_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::DuplicateId:
      return "duplicate id";
    case Violation::Kind::DanglingEndpoint:
      return "dangling endpoint";
    case Violation::Kind::EndpointCount:
      return "endpoint count";
    case Violation::Kind::EmptyId:
      return "empty id";
  }
  return "unknown";
}

namespace {

std::vector<std::string> sorted_labels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

bool has_label(const std::vector<std::string>& labels, std::string_view label) {
  return std::binary_search(labels.begin(), labels.end(), label,
                            [](std::string_view a, std::string_view b) { return a < b; });
}

const Constant* lookup(const PropertyMap& props, std::string_view key) {
  auto it = props.find(std::string(key));
  return it == props.end() ? nullptr : &it->second;
}

}  // namespace

GraphOrViolations validate_graph(const GraphDescription& description) {
  std::vector<Violation> violations;
  std::set<std::string> seen;

  auto claim = [&](const std::string& id, std::string_view what) {
    if (id.empty()) {
      violations.push_back({Violation::Kind::EmptyId, id, std::string(what) + " with empty id"});
      return;
    }
    if (!seen.insert(id).second) {
      violations.push_back(
          {Violation::Kind::DuplicateId, id, "duplicate id '" + id + "' (" + std::string(what) + ")"});
    }
  };

  for (const auto& n : description.nodes) claim(n.id, "node");
  for (const auto& e : description.directed_edges) claim(e.id, "directed edge");
  for (const auto& e : description.undirected_edges) claim(e.id, "undirected edge");

  std::set<std::string> node_ids;
  for (const auto& n : description.nodes) node_ids.insert(n.id);

  auto dangling = [&](const std::string& edge, const std::string& node) {
    violations.push_back({Violation::Kind::DanglingEndpoint, edge,
                          "dangling endpoint: edge '" + edge + "' references missing node '" +
                              node + "'"});
  };

  for (const auto& e : description.directed_edges) {
    if (!node_ids.contains(e.src)) dangling(e.id, e.src);
    if (!node_ids.contains(e.tgt)) dangling(e.id, e.tgt);
  }
  for (const auto& e : description.undirected_edges) {
    if (e.endpoints.empty() || e.endpoints.size() > 2) {
      violations.push_back({Violation::Kind::EndpointCount, e.id,
                            "undirected edge '" + e.id + "' must have 1 or 2 endpoints, got " +
                                std::to_string(e.endpoints.size())});
    }
    for (const auto& n : e.endpoints) {
      if (!node_ids.contains(n)) dangling(e.id, n);
    }
  }

  if (!violations.empty()) return violations;

  PropertyGraph g;
  g.nodes_.reserve(description.nodes.size());
  for (const auto& n : description.nodes) {
    g.node_index_.emplace(n.id, static_cast<NodeIndex>(g.nodes_.size()));
    g.nodes_.push_back({n.id, sorted_labels(n.labels), n.properties});
  }
  g.incidence_.resize(g.nodes_.size());

  auto add_edge = [&](const std::string& id, NodeIndex a, NodeIndex b,
                      const std::vector<std::string>& labels, const PropertyMap& props) {
    auto idx = static_cast<EdgeIndex>(g.edges_.size());
    g.edge_index_.emplace(id, idx);
    g.edges_.push_back({id, a, b, sorted_labels(labels), props});
    g.incidence_[a].push_back(idx);
    if (b != a) g.incidence_[b].push_back(idx);
  };

  for (const auto& e : description.directed_edges) {
    add_edge(e.id, g.node_index_.at(e.src), g.node_index_.at(e.tgt), e.labels, e.properties);
  }
  g.directed_count_ = g.edges_.size();
  for (const auto& e : description.undirected_edges) {
    NodeIndex a = g.node_index_.at(e.endpoints.front());
    NodeIndex b = g.node_index_.at(e.endpoints.back());
    if (b < a) std::swap(a, b);
    add_edge(e.id, a, b, e.labels, e.properties);
  }
  return g;
}

std::optional<NodeIndex> PropertyGraph::find_node(std::string_view id) const {
  auto it = node_index_.find(std::string(id));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> PropertyGraph::find_edge(std::string_view id) const {
  auto it = edge_index_.find(std::string(id));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

bool PropertyGraph::node_has_label(NodeIndex n, std::string_view label) const {
  return has_label(nodes_[n].labels, label);
}

bool PropertyGraph::edge_has_label(EdgeIndex e, std::string_view label) const {
  return has_label(edges_[e].labels, label);
}

const Constant* PropertyGraph::node_property(NodeIndex n, std::string_view key) const {
  return lookup(nodes_[n].properties, key);
}

const Constant* PropertyGraph::edge_property(EdgeIndex e, std::string_view key) const {
  return lookup(edges_[e].properties, key);
}

Path::Path(std::vector<std::uint32_t> elements) : elements_(std::move(elements)) {
  assert(elements_.size() % 2 == 1);
}

Path Path::subpath(std::size_t i, std::size_t j) const {
  assert(i <= j && j <= len());
  return Path(std::vector<std::uint32_t>(elements_.begin() + 2 * i, elements_.begin() + 2 * j + 1));
}

bool Path::is_trail() const {
  std::vector<std::uint32_t> edges;
  edges.reserve(len());
  for (std::size_t i = 0; i < len(); ++i) edges.push_back(edge(i));
  std::sort(edges.begin(), edges.end());
  return std::adjacent_find(edges.begin(), edges.end()) == edges.end();
}

bool Path::is_simple() const {
  std::vector<std::uint32_t> nodes;
  nodes.reserve(len() + 1);
  for (std::size_t i = 0; i <= len(); ++i) nodes.push_back(node(i));
  std::sort(nodes.begin(), nodes.end());
  return std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end();
}

std::optional<Path> concat(const Path& p, const Path& q) {
  if (p.tgt() != q.src()) return std::nullopt;
  std::vector<std::uint32_t> out(p.elements().begin(), p.elements().end());
  out.insert(out.end(), q.elements().begin() + 1, q.elements().end());
  return Path(std::move(out));
}

bool path_is_valid(const PropertyGraph& g, const Path& p) {
  for (std::size_t i = 0; i <= p.len(); ++i) {
    if (p.node(i) >= g.node_count()) return false;
  }
  for (std::size_t i = 0; i < p.len(); ++i) {
    EdgeIndex e = p.edge(i);
    if (e >= g.edge_count()) return false;
    NodeIndex before = p.node(i);
    NodeIndex after = p.node(i + 1);
    NodeIndex s = g.edge_source(e);
    NodeIndex t = g.edge_target(e);
    // Directed: forward or backward traversal. Undirected: endpoints are
    // {before, after}; the stored pair is unordered so the test is the same.
    bool ok = (s == before && t == after) || (s == after && t == before);
    if (!ok) return false;
  }
  return true;
}

std::optional<Path> resolve_path(const PropertyGraph& g, std::span<const std::string> ids) {
  if (ids.size() % 2 == 0) return std::nullopt;
  std::vector<std::uint32_t> elements;
  elements.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto idx = (i % 2 == 0) ? g.find_node(ids[i]) : g.find_edge(ids[i]);
    if (!idx) return std::nullopt;
    elements.push_back(*idx);
  }
  return Path(std::move(elements));
}

std::optional<Path> resolve_path(const PropertyGraph& g,
                                 std::initializer_list<std::string_view> ids) {
  std::vector<std::string> copy(ids.begin(), ids.end());
  return resolve_path(g, std::span<const std::string>(copy));
}

std::vector<std::string> path_ids(const PropertyGraph& g, const Path& p) {
  std::vector<std::string> out;
  out.reserve(p.elements().size());
  for (std::size_t i = 0; i <= p.len(); ++i) {
    out.push_back(g.node_name(p.node(i)));
    if (i < p.len()) out.push_back(g.edge_name(p.edge(i)));
  }
  return out;
}

}  // namespace gpc
