#include "gpc/value.hpp"

namespace gpc {

Value Value::group(std::vector<GroupItem> items) {
  return {Kind::Group, 0, nullptr, std::make_shared<const std::vector<GroupItem>>(std::move(items))};
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  switch (a.kind) {
    case Value::Kind::Nothing:
      return std::strong_ordering::equal;
    case Value::Kind::Node:
    case Value::Kind::Edge:
      return a.id <=> b.id;
    case Value::Kind::Path:
      return *a.path <=> *b.path;
    case Value::Kind::Group:
      if (a.items == b.items) return std::strong_ordering::equal;
      return std::lexicographical_compare_three_way(a.items->begin(), a.items->end(),
                                                    b.items->begin(), b.items->end());
  }
  return std::strong_ordering::equal;
}

bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const GroupItem& a, const GroupItem& b) {
  if (auto c = a.path <=> b.path; c != 0) return c;
  return a.value <=> b.value;
}

bool operator==(const GroupItem& a, const GroupItem& b) { return (a <=> b) == 0; }

bool value_in_type(const Value& v, const Type& t) {
  switch (t.kind) {
    case Type::Kind::Node:
      return v.kind == Value::Kind::Node;
    case Type::Kind::Edge:
      return v.kind == Value::Kind::Edge;
    case Type::Kind::Path:
      return v.kind == Value::Kind::Path;
    case Type::Kind::Maybe:
      return v.kind == Value::Kind::Nothing || value_in_type(v, *t.inner);
    case Type::Kind::Group:
      if (v.kind != Value::Kind::Group) return false;
      for (const auto& item : *v.items) {
        if (!value_in_type(item.value, *t.inner)) return false;
      }
      return true;
  }
  return false;
}

bool conforms(const Assignment& mu, const Schema& schema) {
  if (mu.size() != schema.size()) return false;
  auto it = schema.begin();
  for (const auto& [x, v] : mu) {
    if (it->first != x || !value_in_type(v, it->second)) return false;
    ++it;
  }
  return true;
}

}  // namespace gpc
