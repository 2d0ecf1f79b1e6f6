#pragma once

// Abstract syntax for patterns, queries and GPC+ rule sets, with the textual
// parser and the canonical renderer.
//
// Concrete grammar (whitespace-insensitive):
//
//   ruleset   := rule (";" rule)* ";"?
//   rule      := "Ans" "(" var ("," var)* ")" "<-" query
//   query     := pathquery ("," pathquery)*
//   pathquery := (VAR "=")? restrictor union
//   restrictor:= SIMPLE | TRAIL | SHORTEST | SHORTEST SIMPLE | SHORTEST TRAIL
//   union     := concat ("+" concat)*
//   concat    := postfix postfix*
//   postfix   := atom ("<" cond ">" | "{" n "}" | "{" n ".." m? "}")*
//   atom      := "(" desc? ")" | "[" union "]"
//              | "-[" desc? "]->" | "<-[" desc? "]-" | "-[" desc? "]-"
//              | "->" | "<-" | "--"
//   desc      := VAR | ":" LABEL | VAR ":" LABEL
//   cond      := conj (OR conj)* ; conj := neg (AND neg)*
//   neg       := NOT neg | "(" cond ")" | VAR "." KEY "=" (const | VAR "." KEY)
//
// "<" opens a condition only when it is not immediately followed by "-".

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gpc/errors.hpp"
#include "gpc/graph.hpp"

namespace gpc {

inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

struct Descriptor {
  std::optional<std::string> variable;
  std::optional<std::string> label;

  bool operator==(const Descriptor&) const = default;
};

enum class Direction { Forward, Backward, Undirected };

enum class Restrictor { Simple, Trail, Shortest, ShortestSimple, ShortestTrail };

bool is_shortest(Restrictor r);
bool requires_trail(Restrictor r);
bool requires_simple(Restrictor r);
std::string_view restrictor_name(Restrictor r);

struct Condition;
using ConditionPtr = std::shared_ptr<const Condition>;

struct Condition {
  enum class Kind { PropEqConst, PropEqProp, And, Or, Not };

  Kind kind = Kind::PropEqConst;
  std::string variable;
  std::string key;
  Constant constant;
  std::string other_variable;
  std::string other_key;
  ConditionPtr lhs;  // also the operand of Not
  ConditionPtr rhs;

  static ConditionPtr prop_eq_const(std::string var, std::string key, Constant c);
  static ConditionPtr prop_eq_prop(std::string var, std::string key, std::string other_var,
                                   std::string other_key);
  static ConditionPtr conj(ConditionPtr a, ConditionPtr b);
  static ConditionPtr disj(ConditionPtr a, ConditionPtr b);
  static ConditionPtr negate(ConditionPtr a);
};

bool operator==(const Condition& a, const Condition& b);

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

struct Pattern {
  enum class Kind { Node, Edge, Union, Concat, Cond, Repeat };

  Kind kind = Kind::Node;
  Descriptor descriptor;                   // Node, Edge
  Direction direction = Direction::Forward;  // Edge
  PatternPtr lhs;                          // Union, Concat; operand of Cond, Repeat
  PatternPtr rhs;                          // Union, Concat
  ConditionPtr condition;                  // Cond
  std::uint64_t min = 0;                   // Repeat
  std::uint64_t max = 0;                   // Repeat; kUnbounded for no upper bound

  static PatternPtr node(Descriptor d = {});
  static PatternPtr edge(Direction dir, Descriptor d = {});
  static PatternPtr alt(PatternPtr a, PatternPtr b);
  static PatternPtr concat(PatternPtr a, PatternPtr b);
  static PatternPtr cond(PatternPtr p, ConditionPtr c);
  static PatternPtr repeat(PatternPtr p, std::uint64_t min, std::uint64_t max);
};

bool operator==(const Pattern& a, const Pattern& b);

// Left-folded concatenation of a non-empty factor list.
PatternPtr concat_all(const std::vector<PatternPtr>& factors);

struct Query;
using QueryPtr = std::shared_ptr<const Query>;

struct Query {
  enum class Kind { Restricted, Bound, Join };

  Kind kind = Kind::Restricted;
  Restrictor restrictor = Restrictor::Shortest;
  std::string path_variable;  // Bound only
  PatternPtr pattern;         // Restricted, Bound
  QueryPtr lhs;               // Join
  QueryPtr rhs;

  static QueryPtr restricted(Restrictor r, PatternPtr p);
  static QueryPtr bound(std::string var, Restrictor r, PatternPtr p);
  static QueryPtr join(QueryPtr a, QueryPtr b);
};

bool operator==(const Query& a, const Query& b);

struct Rule {
  std::vector<std::string> head;
  QueryPtr body;
};

struct RuleSet {
  std::vector<Rule> rules;
};

bool operator==(const RuleSet& a, const RuleSet& b);

struct ParseOptions {
  // Identifiers starting with "_v" are reserved for generated variables.
  bool allow_reserved_names = false;
};

inline constexpr std::string_view kReservedPrefix = "_v";

PatternPtr parse_pattern(std::string_view text, const ParseOptions& options = {});
QueryPtr parse_query(std::string_view text, const ParseOptions& options = {});
RuleSet parse_ruleset(std::string_view text, const ParseOptions& options = {});

std::string render(const Pattern& p);
std::string render(const Condition& c);
std::string render(const Query& q);
std::string render(const RuleSet& rs);

// var(): variables bound by descriptors (patterns), plus path variables
// (queries).
std::set<std::string> variables(const Pattern& p);
std::set<std::string> variables(const Query& q);
std::set<std::string> condition_variables(const Condition& c);

}  // namespace gpc
