#include "gpc/typing.hpp"

namespace gpc {

bool operator==(const Type& a, const Type& b) {
  if (a.kind != b.kind) return false;
  if (!a.inner || !b.inner) return a.inner == b.inner;
  return *a.inner == *b.inner;
}

std::string to_string(const Type& t) {
  switch (t.kind) {
    case Type::Kind::Node:
      return "Node";
    case Type::Kind::Edge:
      return "Edge";
    case Type::Kind::Path:
      return "Path";
    case Type::Kind::Maybe:
      return "Maybe(" + to_string(*t.inner) + ")";
    case Type::Kind::Group:
      return "Group(" + to_string(*t.inner) + ")";
  }
  return "?";
}

Type maybe_wrap(const Type& t) {
  if (t.kind == Type::Kind::Maybe) return t;
  return Type::maybe(t);
}

std::string_view collect_mode_name(CollectMode m) {
  switch (m) {
    case CollectMode::Syntactic:
      return "syntactic";
    case CollectMode::Dynamic:
      return "dynamic";
    case CollectMode::Grouping:
      return "grouping";
  }
  return "?";
}

std::string_view type_error_kind_name(TypeError::Kind k) {
  switch (k) {
    case TypeError::Kind::ConflictingTypes:
      return "conflicting types";
    case TypeError::Kind::NonSingletonJoin:
      return "group-or-maybe join";
    case TypeError::Kind::PathVariableReuse:
      return "path var reuse";
    case TypeError::Kind::ConditionOverNonSingleton:
      return "condition over non-singleton";
    case TypeError::Kind::UnboundConditionVariable:
      return "unbound condition variable";
    case TypeError::Kind::EdgelessRepetition:
      return "edgeless repetition";
  }
  return "?";
}

TypeError::TypeError(Kind kind, std::string variable, std::string location)
    : Error(std::string(type_error_kind_name(kind)) +
            (variable.empty() ? std::string() : " for variable '" + variable + "'") + " in " +
            location),
      kind_(kind),
      variable_(std::move(variable)),
      location_(std::move(location)) {}

namespace {

Schema merge_union(const Schema& a, const Schema& b, const std::string& where) {
  Schema out;
  for (const auto& [x, ta] : a) {
    auto it = b.find(x);
    if (it == b.end()) {
      out.emplace(x, maybe_wrap(ta));
      continue;
    }
    const Type& tb = it->second;
    if (ta == tb) {
      out.emplace(x, ta);
    } else if (tb.kind == Type::Kind::Maybe && *tb.inner == ta) {
      out.emplace(x, tb);
    } else if (ta.kind == Type::Kind::Maybe && *ta.inner == tb) {
      out.emplace(x, ta);
    } else {
      throw TypeError(TypeError::Kind::ConflictingTypes, x, where);
    }
  }
  for (const auto& [x, tb] : b) {
    if (!a.contains(x)) out.emplace(x, maybe_wrap(tb));
  }
  return out;
}

// Shared rule of concatenation and join.
Schema merge_join(const Schema& a, const Schema& b, const std::string& where) {
  Schema out = a;
  for (const auto& [x, tb] : b) {
    auto it = a.find(x);
    if (it == a.end()) {
      out.emplace(x, tb);
      continue;
    }
    const Type& ta = it->second;
    if (!(ta == tb)) {
      if (ta.is_singleton() && tb.is_singleton()) {
        throw TypeError(TypeError::Kind::ConflictingTypes, x, where);
      }
      throw TypeError(TypeError::Kind::NonSingletonJoin, x, where);
    }
    if (!ta.is_singleton()) throw TypeError(TypeError::Kind::NonSingletonJoin, x, where);
  }
  return out;
}

void check_condition_var(const Schema& schema, const std::string& x, const std::string& where) {
  auto it = schema.find(x);
  if (it == schema.end()) throw TypeError(TypeError::Kind::UnboundConditionVariable, x, where);
  if (!it->second.is_singleton()) {
    throw TypeError(TypeError::Kind::ConditionOverNonSingleton, x, where);
  }
}

}  // namespace

void check_condition(const Schema& schema, const Condition& theta, const std::string& location) {
  switch (theta.kind) {
    case Condition::Kind::PropEqConst:
      check_condition_var(schema, theta.variable, location);
      return;
    case Condition::Kind::PropEqProp:
      check_condition_var(schema, theta.variable, location);
      check_condition_var(schema, theta.other_variable, location);
      return;
    case Condition::Kind::And:
    case Condition::Kind::Or:
      check_condition(schema, *theta.lhs, location);
      check_condition(schema, *theta.rhs, location);
      return;
    case Condition::Kind::Not:
      check_condition(schema, *theta.lhs, location);
      return;
  }
}

void check_condition(const Pattern& p, const Condition& theta) {
  check_condition(infer_schema(p), theta, render(p) + "<" + render(theta) + ">");
}

Schema infer_schema(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Node:
      if (p.descriptor.variable) return {{*p.descriptor.variable, Type::node()}};
      return {};
    case Pattern::Kind::Edge:
      if (p.descriptor.variable) return {{*p.descriptor.variable, Type::edge()}};
      return {};
    case Pattern::Kind::Union:
      return merge_union(infer_schema(*p.lhs), infer_schema(*p.rhs), render(p));
    case Pattern::Kind::Concat:
      return merge_join(infer_schema(*p.lhs), infer_schema(*p.rhs), render(p));
    case Pattern::Kind::Cond: {
      Schema inner = infer_schema(*p.lhs);
      check_condition(inner, *p.condition, render(p));
      return inner;
    }
    case Pattern::Kind::Repeat: {
      Schema out;
      for (auto& [x, t] : infer_schema(*p.lhs)) out.emplace(x, Type::group(t));
      return out;
    }
  }
  return {};
}

Schema infer_schema(const Query& q) {
  switch (q.kind) {
    case Query::Kind::Restricted:
      return infer_schema(*q.pattern);
    case Query::Kind::Bound: {
      Schema inner = infer_schema(*q.pattern);
      if (inner.contains(q.path_variable)) {
        throw TypeError(TypeError::Kind::PathVariableReuse, q.path_variable, render(q));
      }
      inner.emplace(q.path_variable, Type::path());
      return inner;
    }
    case Query::Kind::Join:
      return merge_join(infer_schema(*q.lhs), infer_schema(*q.rhs), render(q));
  }
  return {};
}

namespace {

bool allowed(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Node:
      return false;
    case Pattern::Kind::Edge:
      return true;
    case Pattern::Kind::Union:
      return allowed(*p.lhs) && allowed(*p.rhs);
    case Pattern::Kind::Concat:
      return allowed(*p.lhs) || allowed(*p.rhs);
    case Pattern::Kind::Cond:
      return allowed(*p.lhs);
    case Pattern::Kind::Repeat:
      return p.min > 0 && allowed(*p.lhs);
  }
  return false;
}

}  // namespace

bool may_match_edgeless(const Pattern& p) { return !allowed(p); }

void validate_for_mode(const Pattern& p, CollectMode mode) {
  if (mode != CollectMode::Syntactic) return;
  switch (p.kind) {
    case Pattern::Kind::Node:
    case Pattern::Kind::Edge:
      return;
    case Pattern::Kind::Union:
    case Pattern::Kind::Concat:
      validate_for_mode(*p.lhs, mode);
      validate_for_mode(*p.rhs, mode);
      return;
    case Pattern::Kind::Cond:
      validate_for_mode(*p.lhs, mode);
      return;
    case Pattern::Kind::Repeat: {
      if (may_match_edgeless(*p.lhs)) {
        auto vars = variables(*p.lhs);
        throw TypeError(TypeError::Kind::EdgelessRepetition, vars.empty() ? "" : *vars.begin(),
                        render(p));
      }
      validate_for_mode(*p.lhs, mode);
      return;
    }
  }
}

void validate_for_mode(const Query& q, CollectMode mode) {
  switch (q.kind) {
    case Query::Kind::Restricted:
    case Query::Kind::Bound:
      validate_for_mode(*q.pattern, mode);
      return;
    case Query::Kind::Join:
      validate_for_mode(*q.lhs, mode);
      validate_for_mode(*q.rhs, mode);
      return;
  }
}

}  // namespace gpc
