#pragma once

// JSON wire formats: graph files, answers, schemas.

#include <string>
#include <string_view>
#include <vector>

#include "gpc/errors.hpp"
#include "gpc/graph.hpp"
#include "gpc/typing.hpp"
#include "gpc/value.hpp"

namespace gpc {

// Malformed graph file or invariant violations.
class GraphError : public Error {
 public:
  explicit GraphError(std::string message, std::vector<Violation> violations = {})
      : Error(std::move(message)), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

GraphDescription parse_graph_description(std::string_view json_text);
PropertyGraph load_graph(std::string_view json_text);

std::string path_to_json(const PropertyGraph& g, const Path& p);
std::string value_to_json(const PropertyGraph& g, const Value& v);
std::string answer_to_json(const PropertyGraph& g, const Answer& a);
std::string match_to_json(const PropertyGraph& g, const Match& m);
std::string tuple_to_json(const PropertyGraph& g, const std::vector<Value>& tuple);
std::string schema_to_json(const Schema& s);

// NDJSON lines in canonical order: serialized paths first, then bindings.
std::vector<std::string> canonical_answer_lines(const PropertyGraph& g,
                                                const std::vector<Answer>& answers);
std::vector<std::string> canonical_match_lines(const PropertyGraph& g,
                                               const std::vector<Match>& matches);

}  // namespace gpc
