#pragma once

// Values, assignments and answers.

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gpc/graph.hpp"
#include "gpc/typing.hpp"

namespace gpc {

struct GroupItem;

struct Value {
  // Declaration order is the comparison order.
  enum class Kind { Nothing, Node, Edge, Path, Group };

  Kind kind = Kind::Nothing;
  std::uint32_t id = 0;                                  // Node, Edge
  std::shared_ptr<const Path> path;                      // Path
  std::shared_ptr<const std::vector<GroupItem>> items;   // Group

  static Value nothing() { return {}; }
  static Value node(NodeIndex n) { return {Kind::Node, n, nullptr, nullptr}; }
  static Value edge(EdgeIndex e) { return {Kind::Edge, e, nullptr, nullptr}; }
  static Value of_path(Path p) {
    return {Kind::Path, 0, std::make_shared<const Path>(std::move(p)), nullptr};
  }
  static Value group(std::vector<GroupItem> items);
};

struct GroupItem {
  Path path;
  Value value;
};

std::strong_ordering operator<=>(const Value& a, const Value& b);
bool operator==(const Value& a, const Value& b);
std::strong_ordering operator<=>(const GroupItem& a, const GroupItem& b);
bool operator==(const GroupItem& a, const GroupItem& b);

using Assignment = std::map<std::string, Value>;

// (p, mu), an answer of a pattern.
struct Match {
  Path path;
  Assignment mu;

  auto operator<=>(const Match&) const = default;
  bool operator==(const Match&) const = default;
};

// (p-bar, mu), an answer of a query.
struct Answer {
  std::vector<Path> paths;
  Assignment bindings;

  auto operator<=>(const Answer&) const = default;
  bool operator==(const Answer&) const = default;
};

bool value_in_type(const Value& v, const Type& t);
bool conforms(const Assignment& mu, const Schema& schema);

}  // namespace gpc
