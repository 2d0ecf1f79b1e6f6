#include "gpc/serialize.hpp"

#include <algorithm>

#include "json.hpp"

namespace gpc {

using ojson = nlohmann::ordered_json;

namespace {

std::vector<std::string> string_list(const ojson& j, const char* field, bool required) {
  if (!j.contains(field)) {
    if (required) throw GraphError(std::string("missing field '") + field + "'");
    return {};
  }
  const auto& arr = j.at(field);
  if (!arr.is_array()) throw GraphError(std::string("field '") + field + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : arr) {
    if (!item.is_string()) throw GraphError(std::string("field '") + field + "' must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::string string_field(const ojson& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_string()) {
    throw GraphError(std::string("missing string field '") + field + "'");
  }
  return j.at(field).get<std::string>();
}

PropertyMap properties(const ojson& j) {
  PropertyMap out;
  if (!j.contains("properties")) return out;
  const auto& props = j.at("properties");
  if (!props.is_object()) throw GraphError("field 'properties' must be an object");
  for (const auto& [key, value] : props.items()) {
    if (value.is_string()) {
      out.emplace(key, value.get<std::string>());
    } else if (value.is_boolean()) {
      out.emplace(key, value.get<bool>());
    } else if (value.is_number_integer()) {
      out.emplace(key, value.get<std::int64_t>());
    } else {
      throw GraphError("property '" + key + "' must be a string, integer or boolean");
    }
  }
  return out;
}

const ojson& array_field(const ojson& j, const char* field) {
  static const ojson empty = ojson::array();
  if (!j.contains(field)) return empty;
  if (!j.at(field).is_array()) throw GraphError(std::string("field '") + field + "' must be an array");
  return j.at(field);
}

ojson path_json(const PropertyGraph& g, const Path& p) {
  return ojson{{"elements", path_ids(g, p)}};
}

ojson value_json(const PropertyGraph& g, const Value& v) {
  switch (v.kind) {
    case Value::Kind::Nothing:
      return ojson{{"kind", "nothing"}};
    case Value::Kind::Node:
      return ojson{{"kind", "node"}, {"id", g.node_name(v.id)}};
    case Value::Kind::Edge:
      return ojson{{"kind", "edge"}, {"id", g.edge_name(v.id)}};
    case Value::Kind::Path:
      return ojson{{"kind", "path"}, {"elements", path_ids(g, *v.path)}};
    case Value::Kind::Group: {
      ojson items = ojson::array();
      for (const auto& item : *v.items) {
        items.push_back(ojson::array({path_json(g, item.path), value_json(g, item.value)}));
      }
      return ojson{{"kind", "group"}, {"items", std::move(items)}};
    }
  }
  return {};
}

ojson bindings_json(const PropertyGraph& g, const Assignment& mu) {
  ojson out = ojson::object();
  for (const auto& [x, v] : mu) out[x] = value_json(g, v);
  return out;
}

std::vector<std::string> sorted_lines(std::vector<std::pair<std::string, std::string>> keyed) {
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  out.reserve(keyed.size());
  for (auto& [paths, bindings] : keyed) {
    out.push_back("{\"paths\":" + paths + ",\"bindings\":" + bindings + "}");
  }
  return out;
}

}  // namespace

GraphDescription parse_graph_description(std::string_view json_text) {
  ojson j;
  try {
    j = ojson::parse(json_text);
  } catch (const ojson::parse_error& e) {
    throw GraphError(std::string("malformed graph JSON: ") + e.what());
  }
  if (!j.is_object()) throw GraphError("graph JSON must be an object");
  GraphDescription d;
  for (const auto& n : array_field(j, "nodes")) {
    d.nodes.push_back({string_field(n, "id"), string_list(n, "labels", false), properties(n)});
  }
  for (const auto& e : array_field(j, "directed_edges")) {
    d.directed_edges.push_back({string_field(e, "id"), string_field(e, "src"),
                                string_field(e, "tgt"), string_list(e, "labels", false),
                                properties(e)});
  }
  for (const auto& e : array_field(j, "undirected_edges")) {
    d.undirected_edges.push_back({string_field(e, "id"), string_list(e, "endpoints", true),
                                  string_list(e, "labels", false), properties(e)});
  }
  return d;
}

PropertyGraph load_graph(std::string_view json_text) {
  auto result = validate_graph(parse_graph_description(json_text));
  if (auto* violations = std::get_if<std::vector<Violation>>(&result)) {
    std::string message = "invalid graph";
    for (const auto& v : *violations) message += "; " + v.message;
    throw GraphError(message, std::move(*violations));
  }
  return std::get<PropertyGraph>(std::move(result));
}

std::string path_to_json(const PropertyGraph& g, const Path& p) { return path_json(g, p).dump(); }

std::string value_to_json(const PropertyGraph& g, const Value& v) { return value_json(g, v).dump(); }

std::string answer_to_json(const PropertyGraph& g, const Answer& a) {
  ojson paths = ojson::array();
  for (const auto& p : a.paths) paths.push_back(path_json(g, p));
  return ojson{{"paths", std::move(paths)}, {"bindings", bindings_json(g, a.bindings)}}.dump();
}

std::string match_to_json(const PropertyGraph& g, const Match& m) {
  return answer_to_json(g, Answer{{m.path}, m.mu});
}

std::string tuple_to_json(const PropertyGraph& g, const std::vector<Value>& tuple) {
  ojson values = ojson::array();
  for (const auto& v : tuple) values.push_back(value_json(g, v));
  return ojson{{"tuple", std::move(values)}}.dump();
}

std::string schema_to_json(const Schema& s) {
  ojson out = ojson::object();
  for (const auto& [x, t] : s) out[x] = to_string(t);
  return out.dump();
}

std::vector<std::string> canonical_answer_lines(const PropertyGraph& g,
                                                const std::vector<Answer>& answers) {
  std::vector<std::pair<std::string, std::string>> keyed;
  keyed.reserve(answers.size());
  for (const auto& a : answers) {
    ojson paths = ojson::array();
    for (const auto& p : a.paths) paths.push_back(path_json(g, p));
    keyed.emplace_back(paths.dump(), bindings_json(g, a.bindings).dump());
  }
  return sorted_lines(std::move(keyed));
}

std::vector<std::string> canonical_match_lines(const PropertyGraph& g,
                                               const std::vector<Match>& matches) {
  std::vector<std::pair<std::string, std::string>> keyed;
  keyed.reserve(matches.size());
  for (const auto& m : matches) {
    keyed.emplace_back(ojson::array({path_json(g, m.path)}).dump(), bindings_json(g, m.mu).dump());
  }
  return sorted_lines(std::move(keyed));
}

}  // namespace gpc
