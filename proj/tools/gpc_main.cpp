// gpc: command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpc/gpc.h"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

int exit_code(gpc_status s) {
  switch (s) {
    case GPC_OK:
      return 0;
    case GPC_ERR_PARSE:
    case GPC_ERR_TYPE:
    case GPC_ERR_GRAPH:
    case GPC_ERR_INVALID_ARGUMENT:
      return 2;
    case GPC_ERR_ORACLE_MISMATCH:
      return 3;
    default:
      return 1;
  }
}

int report_error(gpc_status s) {
  std::cerr << gpc_last_error() << "\n";
  return exit_code(s);
}

// "-" is stdin, an existing file is read, anything else is literal text.
bool read_input(const std::string& arg, std::string& out) {
  if (arg == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return true;
  }
  std::ifstream in(arg, std::ios::binary);
  if (in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
  }
  out = arg;
  return true;
}

std::string cell(const json& v) {
  if (v.contains("elements")) {
    std::string out;
    for (const auto& e : v.at("elements")) {
      if (!out.empty()) out += " ";
      out += e.get<std::string>();
    }
    return "<" + out + ">";
  }
  const std::string kind = v.value("kind", "");
  if (kind == "nothing") return "-";
  if (kind == "node" || kind == "edge") return v.at("id").get<std::string>();
  if (kind == "group") {
    std::string out;
    for (const auto& item : v.at("items")) {
      if (!out.empty()) out += ", ";
      out += cell(item.at(1));
    }
    return "[" + out + "]";
  }
  return v.dump();
}

void print_table(const std::vector<std::string>& lines) {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  for (const auto& line : lines) {
    json j = json::parse(line);
    std::vector<std::string> row;
    if (j.contains("tuple")) {
      for (std::size_t i = 0; i < j.at("tuple").size(); ++i) {
        if (rows.empty()) header.push_back("#" + std::to_string(i));
        row.push_back(cell(j.at("tuple").at(i)));
      }
    } else {
      std::string paths;
      for (const auto& p : j.at("paths")) paths += cell(p);
      if (rows.empty()) header.push_back("paths");
      row.push_back(paths);
      for (const auto& [x, v] : j.at("bindings").items()) {
        if (rows.empty()) header.push_back(x);
        row.push_back(cell(v));
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return;
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  auto emit = [&](const std::vector<std::string>& r) {
    std::string out;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) out += " | ";
      out += r[c] + std::string(width[c] - r[c].size(), ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    std::cout << out << "\n";
  };
  emit(header);
  std::string rule;
  for (std::size_t c = 0; c < width.size(); ++c) {
    if (c > 0) rule += "-+-";
    rule += std::string(width[c], '-');
  }
  std::cout << rule << "\n";
  for (const auto& r : rows) emit(r);
}

void print_result(const gpc_result* r, const std::string& format) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < gpc_result_count(r); ++i) lines.emplace_back(gpc_result_line(r, i));
  if (format == "table") {
    print_table(lines);
  } else {
    for (const auto& l : lines) std::cout << l << "\n";
  }
  std::cout.flush();
}

struct EvalFlags {
  std::string collect_mode = "grouping";
  std::int64_t max_len = -1;
  std::uint64_t max_answers = 100000;
  bool lenient = false;
  bool oracle = false;
  std::string format = "ndjson";

  gpc_options options() const {
    gpc_options o = gpc_default_options();
    o.collect_mode = collect_mode == "syntactic" ? GPC_COLLECT_SYNTACTIC
                     : collect_mode == "dynamic" ? GPC_COLLECT_DYNAMIC
                                                 : GPC_COLLECT_GROUPING;
    o.max_len = max_len;
    o.max_answers = max_answers;
    o.lenient_unify = lenient ? 1 : 0;
    o.oracle = oracle ? 1 : 0;
    return o;
  }
};

void add_eval_flags(CLI::App* cmd, EvalFlags& f, bool full) {
  cmd->add_option("--collect-mode", f.collect_mode, "syntactic, dynamic or grouping")
      ->check(CLI::IsMember({"syntactic", "dynamic", "grouping"}));
  cmd->add_option("--max-len", f.max_len, "Path length bound (default: automatic)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-answers", f.max_answers, "Answer ceiling");
  cmd->add_flag("--lenient-unify", f.lenient, "Let Nothing unify with any value");
  cmd->add_option("--format", f.format, "ndjson or table")->check(CLI::IsMember({"ndjson", "table"}));
  if (full) cmd->add_flag("--oracle", f.oracle, "Cross-check against the brute-force oracle");
}

int cmd_check(const std::string& input, const std::string& graph_path) {
  if (!graph_path.empty()) {
    gpc_graph* g = nullptr;
    gpc_status s = gpc_graph_from_file(graph_path.c_str(), &g);
    if (s != GPC_OK) return report_error(s);
    gpc_graph_free(g);
  }
  std::string text;
  read_input(input, text);
  char* schema = nullptr;
  gpc_status s = gpc_check(text.c_str(), &schema);
  if (s != GPC_OK) return report_error(s);
  std::cout << schema << "\n";
  gpc_string_free(schema);
  return 0;
}

int cmd_eval(bool is_match, const std::string& graph_path, const std::string& input,
             const EvalFlags& flags) {
  gpc_graph* g = nullptr;
  gpc_status s = gpc_graph_from_file(graph_path.c_str(), &g);
  if (s != GPC_OK) return report_error(s);
  std::string text;
  read_input(input, text);
  gpc_options opts = flags.options();
  gpc_result* r = nullptr;
  s = is_match ? gpc_match(g, text.c_str(), &opts, &r) : gpc_run(g, text.c_str(), &opts, &r);
  int code = 0;
  if (r) {
    print_result(r, flags.format);
    if (s != GPC_OK) std::cerr << gpc_last_error() << "\n";
    std::cerr << gpc_result_report(r) << "\n";
    code = exit_code(s);
    gpc_result_free(r);
  } else {
    code = report_error(s);
  }
  gpc_graph_free(g);
  return code;
}

int cmd_translate(const std::string& input) {
  std::string text;
  read_input(input, text);
  char* out = nullptr;
  gpc_status s = gpc_translate(text.c_str(), &out);
  if (s != GPC_OK) return report_error(s);
  std::cout << out;
  gpc_string_free(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph pattern calculus engine"};
  app.require_subcommand(1);

  std::string input, graph_path;
  EvalFlags flags;

  auto* check = app.add_subcommand("check", "Type-check a pattern, query or rule set");
  check->add_option("input", input, "File, '-' for stdin, or literal text")->required();
  check->add_option("--graph", graph_path, "Also validate this graph file");

  auto* run = app.add_subcommand("run", "Evaluate a query or rule set");
  run->add_option("graph", graph_path, "Graph JSON file")->required();
  run->add_option("query", input, "File, '-' for stdin, or literal text")->required();
  add_eval_flags(run, flags, true);

  auto* match = app.add_subcommand("match", "Evaluate a bare pattern");
  match->add_option("graph", graph_path, "Graph JSON file")->required();
  match->add_option("pattern", input, "File, '-' for stdin, or literal text")->required();
  add_eval_flags(match, flags, false);

  auto* translate = app.add_subcommand("translate", "Translate #nre / #c2rpq input to GPC+");
  translate->add_option("input", input, "File, '-' for stdin, or literal text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  if (check->parsed()) return cmd_check(input, graph_path);
  if (run->parsed()) return cmd_eval(false, graph_path, input, flags);
  if (match->parsed()) return cmd_eval(true, graph_path, input, flags);
  return cmd_translate(input);
}
