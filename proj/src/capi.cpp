#include "gpc/gpc.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gpc/eval.hpp"
#include "gpc/gpcplus.hpp"
#include "gpc/nre.hpp"
#include "gpc/oracle.hpp"
#include "gpc/serialize.hpp"
#include "gpc/syntax.hpp"
#include "gpc/typing.hpp"
#include "json.hpp"

struct gpc_graph {
  gpc::PropertyGraph graph;
};

struct gpc_result {
  std::vector<std::string> lines;
  std::string report;
};

namespace {

using json = nlohmann::ordered_json;

thread_local std::string last_error;

void set_error(const json& j) { last_error = j.dump(); }

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Converts whatever the engine threw into a status and a JSON diagnostic.
gpc_status fail_with_current() {
  try {
    throw;
  } catch (const gpc::ParseError& e) {
    set_error({{"error", "parse"},
               {"message", e.what()},
               {"line", e.line()},
               {"column", e.column()},
               {"expected", e.expected()}});
    return GPC_ERR_PARSE;
  } catch (const gpc::TypeError& e) {
    set_error({{"error", "type"},
               {"kind", std::string(gpc::type_error_kind_name(e.kind()))},
               {"variable", e.variable()},
               {"location", e.location()},
               {"message", e.what()}});
    return GPC_ERR_TYPE;
  } catch (const gpc::GraphError& e) {
    json violations = json::array();
    for (const auto& v : e.violations()) {
      violations.push_back({{"kind", std::string(gpc::violation_kind_name(v.kind))},
                            {"id", v.id},
                            {"message", v.message}});
    }
    set_error({{"error", "graph"}, {"message", e.what()}, {"violations", violations}});
    return GPC_ERR_GRAPH;
  } catch (const gpc::ResourceLimitError& e) {
    set_error({{"error", "resource_limit"}, {"message", e.what()}});
    return GPC_ERR_RESOURCE;
  } catch (const gpc::oracle::BudgetExceeded& e) {
    set_error({{"error", "oracle_budget"}, {"message", e.what()}});
    return GPC_ERR_RESOURCE;
  } catch (const std::invalid_argument& e) {
    set_error({{"error", "invalid_argument"}, {"message", e.what()}});
    return GPC_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    set_error({{"error", "resource_limit"}, {"message", "out of memory"}});
    return GPC_ERR_RESOURCE;
  } catch (const std::exception& e) {
    set_error({{"error", "internal"}, {"message", e.what()}});
    return GPC_ERR_INTERNAL;
  }
}

gpc_status invalid(const char* message) {
  set_error({{"error", "invalid_argument"}, {"message", message}});
  return GPC_ERR_INVALID_ARGUMENT;
}

std::string_view trim_left(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  return s;
}

bool starts_with_word(std::string_view s, std::string_view word) {
  if (s.size() < word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(s[i])) != word[i]) return false;
  }
  return s.size() == word.size() ||
         !(std::isalnum(static_cast<unsigned char>(s[word.size()])) || s[word.size()] == '_');
}

enum class InputKind { Pattern, Query, RuleSet, Nre, C2rpq };

InputKind detect(std::string_view text) {
  std::string_view s = trim_left(text);
  if (s.starts_with("#nre")) return InputKind::Nre;
  if (s.starts_with("#c2rpq")) return InputKind::C2rpq;
  if (s.starts_with("Ans") && trim_left(s.substr(3)).starts_with("(")) return InputKind::RuleSet;
  for (auto kw : {"SHORTEST", "SIMPLE", "TRAIL"}) {
    if (starts_with_word(s, kw)) return InputKind::Query;
  }
  // VAR "=" restrictor
  std::size_t i = 0;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
  if (i > 0 && trim_left(s.substr(i)).starts_with("=")) return InputKind::Query;
  return InputKind::Pattern;
}

std::string after_header(std::string_view text) {
  std::string_view s = trim_left(text);
  auto nl = s.find('\n');
  return nl == std::string_view::npos ? std::string() : std::string(s.substr(nl + 1));
}

gpc::RuleSet translated(InputKind kind, std::string_view text) {
  if (kind == InputKind::Nre) return gpc::translate_nre(*gpc::parse_nre(after_header(text)));
  return gpc::translate_c2rpq(gpc::parse_c2rpq(after_header(text)));
}

gpc::CollectMode mode_of(gpc_collect_mode m) {
  switch (m) {
    case GPC_COLLECT_DYNAMIC:
      return gpc::CollectMode::Dynamic;
    case GPC_COLLECT_SYNTACTIC:
      return gpc::CollectMode::Syntactic;
    default:
      return gpc::CollectMode::Grouping;
  }
}

gpc::EvalConfig config_of(const gpc_options& o) {
  gpc::EvalConfig cfg;
  cfg.collect_mode = mode_of(o.collect_mode);
  if (o.max_len >= 0) cfg.max_len = static_cast<std::uint64_t>(o.max_len);
  cfg.lenient_unify = o.lenient_unify != 0;
  cfg.max_answers = o.max_answers;
  return cfg;
}

gpc::oracle::Options oracle_options(const gpc::EvalConfig& cfg) {
  gpc::oracle::Options o;
  o.mode = cfg.collect_mode;
  o.lenient_unify = cfg.lenient_unify;
  o.max_len = cfg.max_len;
  o.shortest_cap = cfg.shortest_bound_cap;
  return o;
}

constexpr gpc::oracle::Budget kOracleBudget{16, 200000};

std::string report_json(std::size_t count, std::int64_t elapsed_ms, gpc::CollectMode mode,
                        std::uint64_t bound, bool truncated) {
  return json{{"answer_count", count},
              {"elapsed_ms", elapsed_ms},
              {"mode", std::string(gpc::collect_mode_name(mode))},
              {"bound_used", bound},
              {"truncated", truncated}}
      .dump();
}

std::vector<std::string> ruleset_lines(const gpc::PropertyGraph& g,
                                       const std::set<gpc::ValueTuple>& tuples) {
  std::vector<std::string> out;
  for (const auto& t : tuples) out.push_back(gpc::tuple_to_json(g, t));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<gpc::ValueTuple> oracle_ruleset(const gpc::PropertyGraph& g, const gpc::RuleSet& rs,
                                         const gpc::EvalConfig& cfg) {
  std::set<gpc::ValueTuple> out;
  for (const auto& rule : rs.rules) {
    for (const auto& a :
         gpc::oracle::brute_force_query(g, *rule.body, oracle_options(cfg), kOracleBudget)) {
      gpc::ValueTuple t;
      for (const auto& x : rule.head) t.push_back(a.bindings.at(x));
      out.insert(std::move(t));
    }
  }
  return out;
}

gpc_status mismatch(const std::vector<std::string>& engine, const std::vector<std::string>& oracle) {
  std::vector<std::string> missing, extra;
  std::set_difference(oracle.begin(), oracle.end(), engine.begin(), engine.end(),
                      std::back_inserter(missing));
  std::set_difference(engine.begin(), engine.end(), oracle.begin(), oracle.end(),
                      std::back_inserter(extra));
  set_error({{"error", "oracle_mismatch"},
             {"engine_count", engine.size()},
             {"oracle_count", oracle.size()},
             {"missing", missing},
             {"extra", extra}});
  return GPC_ERR_ORACLE_MISMATCH;
}

}  // namespace

extern "C" {

gpc_options gpc_default_options(void) {
  gpc_options o;
  o.collect_mode = GPC_COLLECT_GROUPING;
  o.max_len = -1;
  o.max_answers = 100000;
  o.lenient_unify = 0;
  o.oracle = 0;
  return o;
}

const char* gpc_last_error(void) { return last_error.c_str(); }

void gpc_string_free(char* s) { std::free(s); }

gpc_status gpc_graph_from_json(const char* json_text, gpc_graph** out) {
  if (!json_text || !out) return invalid("null argument");
  last_error.clear();
  *out = nullptr;
  try {
    *out = new gpc_graph{gpc::load_graph(json_text)};
    return GPC_OK;
  } catch (...) {
    return fail_with_current();
  }
}

gpc_status gpc_graph_from_file(const char* path, gpc_graph** out) {
  if (!path || !out) return invalid("null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    set_error({{"error", "io"}, {"message", std::string("cannot read ") + path}});
    return GPC_ERR_IO;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return gpc_graph_from_json(buf.str().c_str(), out);
}

void gpc_graph_free(gpc_graph* g) { delete g; }

size_t gpc_graph_node_count(const gpc_graph* g) { return g ? g->graph.node_count() : 0; }

size_t gpc_graph_edge_count(const gpc_graph* g) { return g ? g->graph.edge_count() : 0; }

gpc_status gpc_check(const char* text, char** schema_json) {
  if (!text || !schema_json) return invalid("null argument");
  last_error.clear();
  *schema_json = nullptr;
  try {
    std::string out;
    switch (InputKind kind = detect(text)) {
      case InputKind::Pattern:
        out = gpc::schema_to_json(gpc::infer_schema(*gpc::parse_pattern(text)));
        break;
      case InputKind::Query:
        out = gpc::schema_to_json(gpc::infer_schema(*gpc::parse_query(text)));
        break;
      case InputKind::RuleSet:
      case InputKind::Nre:
      case InputKind::C2rpq: {
        gpc::RuleSet rs =
            kind == InputKind::RuleSet ? gpc::parse_ruleset(text) : translated(kind, text);
        out = "[";
        for (std::size_t i = 0; i < rs.rules.size(); ++i) {
          if (i > 0) out += ",";
          out += gpc::schema_to_json(gpc::infer_schema(*rs.rules[i].body));
        }
        out += "]";
        break;
      }
    }
    *schema_json = dup(out);
    return GPC_OK;
  } catch (...) {
    return fail_with_current();
  }
}

gpc_status gpc_run(const gpc_graph* g, const char* text, const gpc_options* options,
                   gpc_result** out) {
  if (!g || !text || !out) return invalid("null argument");
  last_error.clear();
  *out = nullptr;
  const gpc_options opts = options ? *options : gpc_default_options();
  const gpc::EvalConfig cfg = config_of(opts);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
  };
  gpc::EvalStats stats;
  try {
    auto result = std::make_unique<gpc_result>();
    InputKind kind = detect(text);
    std::vector<std::string> oracle_lines;
    if (kind == InputKind::Pattern || kind == InputKind::Query) {
      auto q = gpc::parse_query(text);
      gpc::infer_schema(*q);
      result->lines = gpc::canonical_answer_lines(g->graph, gpc::eval_query(g->graph, *q, cfg, &stats));
      if (opts.oracle) {
        oracle_lines = gpc::canonical_answer_lines(
            g->graph,
            gpc::oracle::brute_force_query(g->graph, *q, oracle_options(cfg), kOracleBudget));
      }
    } else {
      gpc::RuleSet rs = kind == InputKind::RuleSet ? gpc::parse_ruleset(text) : translated(kind, text);
      auto tuples = gpc::eval_ruleset(g->graph, rs, cfg, &stats);
      if (tuples.size() > cfg.max_answers) {
        throw gpc::ResourceLimitError("answer count exceeds " + std::to_string(cfg.max_answers));
      }
      result->lines = ruleset_lines(g->graph, tuples);
      if (opts.oracle) oracle_lines = ruleset_lines(g->graph, oracle_ruleset(g->graph, rs, cfg));
    }
    result->report =
        report_json(result->lines.size(), elapsed(), cfg.collect_mode, stats.bound_used, false);
    gpc_status status = GPC_OK;
    if (opts.oracle && oracle_lines != result->lines) status = mismatch(result->lines, oracle_lines);
    *out = result.release();
    return status;
  } catch (const gpc::ResourceLimitError&) {
    gpc_status status = fail_with_current();
    auto result = std::make_unique<gpc_result>();
    result->report = report_json(0, elapsed(), cfg.collect_mode, stats.bound_used, true);
    *out = result.release();
    return status;
  } catch (...) {
    return fail_with_current();
  }
}

gpc_status gpc_match(const gpc_graph* g, const char* pattern_text, const gpc_options* options,
                     gpc_result** out) {
  if (!g || !pattern_text || !out) return invalid("null argument");
  last_error.clear();
  *out = nullptr;
  const gpc_options opts = options ? *options : gpc_default_options();
  const gpc::EvalConfig cfg = config_of(opts);
  const auto start = std::chrono::steady_clock::now();
  gpc::EvalStats stats;
  try {
    auto p = gpc::parse_pattern(pattern_text);
    gpc::infer_schema(*p);
    auto matches = gpc::eval_pattern(g->graph, *p, cfg, &stats);
    auto result = std::make_unique<gpc_result>();
    result->lines = gpc::canonical_match_lines(g->graph, matches);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    result->report = report_json(result->lines.size(), ms, cfg.collect_mode, stats.bound_used, false);
    *out = result.release();
    return GPC_OK;
  } catch (const gpc::ResourceLimitError&) {
    gpc_status status = fail_with_current();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    auto result = std::make_unique<gpc_result>();
    result->report = report_json(0, ms, cfg.collect_mode, stats.bound_used, true);
    *out = result.release();
    return status;
  } catch (...) {
    return fail_with_current();
  }
}

gpc_status gpc_translate(const char* text, char** gpc_text) {
  if (!text || !gpc_text) return invalid("null argument");
  last_error.clear();
  *gpc_text = nullptr;
  try {
    InputKind kind = detect(text);
    if (kind != InputKind::Nre && kind != InputKind::C2rpq) {
      return invalid("translate input must start with a #nre or #c2rpq header line");
    }
    *gpc_text = dup(gpc::render(translated(kind, text)) + "\n");
    return GPC_OK;
  } catch (...) {
    return fail_with_current();
  }
}

size_t gpc_result_count(const gpc_result* r) { return r ? r->lines.size() : 0; }

const char* gpc_result_line(const gpc_result* r, size_t i) {
  if (!r || i >= r->lines.size()) return nullptr;
  return r->lines[i].c_str();
}

const char* gpc_result_report(const gpc_result* r) { return r ? r->report.c_str() : ""; }

void gpc_result_free(gpc_result* r) { delete r; }

}  // extern "C"
