#pragma once

// Type inference for patterns and queries.

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "gpc/errors.hpp"
#include "gpc/syntax.hpp"

namespace gpc {

struct Type {
  enum class Kind { Node, Edge, Path, Maybe, Group };

  Kind kind = Kind::Node;
  std::shared_ptr<const Type> inner;  // Maybe, Group

  static Type node() { return {Kind::Node, nullptr}; }
  static Type edge() { return {Kind::Edge, nullptr}; }
  static Type path() { return {Kind::Path, nullptr}; }
  static Type maybe(Type t) { return {Kind::Maybe, std::make_shared<const Type>(std::move(t))}; }
  static Type group(Type t) { return {Kind::Group, std::make_shared<const Type>(std::move(t))}; }

  bool is_singleton() const { return kind == Kind::Node || kind == Kind::Edge; }
};

bool operator==(const Type& a, const Type& b);
std::string to_string(const Type& t);

using Schema = std::map<std::string, Type>;

// tau? : Maybe(tau) unless tau is already a Maybe.
Type maybe_wrap(const Type& t);

enum class CollectMode { Syntactic, Dynamic, Grouping };

std::string_view collect_mode_name(CollectMode m);

class TypeError : public Error {
 public:
  enum class Kind {
    ConflictingTypes,
    NonSingletonJoin,
    PathVariableReuse,
    ConditionOverNonSingleton,
    UnboundConditionVariable,
    EdgelessRepetition,
  };

  TypeError(Kind kind, std::string variable, std::string location);

  Kind kind() const { return kind_; }
  const std::string& variable() const { return variable_; }
  // Rendered subexpression where the failing rule applies.
  const std::string& location() const { return location_; }

 private:
  Kind kind_;
  std::string variable_;
  std::string location_;
};

std::string_view type_error_kind_name(TypeError::Kind k);

Schema infer_schema(const Pattern& p);
Schema infer_schema(const Query& q);

// Throws TypeError unless theta : Bool under sch(p).
void check_condition(const Pattern& p, const Condition& theta);
void check_condition(const Schema& schema, const Condition& theta, const std::string& location);

// True unless p is "allowed" in the syntactic-restriction sense.
bool may_match_edgeless(const Pattern& p);

void validate_for_mode(const Pattern& p, CollectMode mode);
void validate_for_mode(const Query& q, CollectMode mode);

}  // namespace gpc
