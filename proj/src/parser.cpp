#include <cctype>
#include <charconv>

#include "gpc/syntax.hpp"

namespace gpc {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(a[i])) !=
        std::toupper(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  PatternPtr pattern_only() {
    auto p = parse_union();
    expect_end();
    return p;
  }

  QueryPtr query_only() {
    auto q = parse_query();
    expect_end();
    return q;
  }

  RuleSet ruleset() {
    RuleSet out;
    skip_ws();
    if (at_end()) fail("empty rule set", {"Ans"});
    while (true) {
      out.rules.push_back(parse_rule());
      if (!accept(";")) break;
      skip_ws();
      if (at_end()) break;
    }
    expect_end();
    return out;
  }

 private:
  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek_char(std::size_t off = 0) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool looking_at(std::string_view s) {
    skip_ws();
    return text_.substr(pos_).starts_with(s);
  }

  bool accept(std::string_view s) {
    if (!looking_at(s)) return false;
    pos_ += s.size();
    return true;
  }

  // Token glued to the previous one, no whitespace allowed.
  bool accept_raw(std::string_view s) {
    if (!text_.substr(pos_).starts_with(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'", {std::string(s)});
  }

  void expect_end() {
    skip_ws();
    if (!at_end()) fail("unexpected trailing input", {"end of input"});
  }

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const {
    fail_at(pos_, message, std::move(expected));
  }

  [[noreturn]] void fail_at(std::size_t at, const std::string& message,
                            std::vector<std::string> expected) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string found = at < text_.size() ? "'" + std::string(1, text_[at]) + "'" : "end of input";
    throw ParseError(message + " at " + std::to_string(line) + ":" + std::to_string(column) +
                         ", found " + found,
                     line, column, std::move(expected));
  }

  // Identifier at the cursor, without consuming it.
  std::string_view peek_ident() {
    skip_ws();
    if (at_end() || !ident_start(text_[pos_])) return {};
    std::size_t end = pos_ + 1;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    return text_.substr(pos_, end - pos_);
  }

  std::string identifier(std::string_view what) {
    auto id = peek_ident();
    if (id.empty()) fail("expected " + std::string(what), {std::string(what)});
    pos_ += id.size();
    return std::string(id);
  }

  std::string variable() {
    std::size_t at = (skip_ws(), pos_);
    auto name = identifier("variable");
    if (!options_.allow_reserved_names && std::string_view(name).starts_with(kReservedPrefix)) {
      fail_at(at, "variable '" + name + "' uses the reserved prefix '_v'", {"variable"});
    }
    return name;
  }

  // Keyword test that does not consume; a keyword followed by "." is a
  // property access on a variable of the same name.
  bool at_keyword(std::string_view kw) {
    auto id = peek_ident();
    if (id.empty() || !iequals(id, kw)) return false;
    std::size_t after = pos_ + id.size();
    while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]))) ++after;
    return !(after < text_.size() && text_[after] == '.');
  }

  bool accept_keyword(std::string_view kw) {
    if (!at_keyword(kw)) return false;
    pos_ += kw.size();
    return true;
  }

  std::uint64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer", {"integer"});
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc()) fail_at(start, "integer out of range", {"integer"});
    return value;
  }

  // ---- rules and queries ----

  Rule parse_rule() {
    skip_ws();
    std::size_t start = pos_;
    auto head_kw = peek_ident();
    if (head_kw != "Ans") fail("expected rule head", {"Ans"});
    pos_ += head_kw.size();
    expect("(");
    Rule rule;
    if (!accept(")")) {
      do {
        rule.head.push_back(variable());
      } while (accept(","));
      expect(")");
    }
    expect("<-");
    rule.body = parse_query();
    auto vars = variables(*rule.body);
    for (const auto& v : rule.head) {
      if (!vars.contains(v)) {
        fail_at(start, "head variable '" + v + "' does not occur in the rule body", {});
      }
    }
    return rule;
  }

  QueryPtr parse_query() {
    auto q = parse_path_query();
    while (accept(",")) q = Query::join(q, parse_path_query());
    return q;
  }

  bool at_restrictor() {
    return at_keyword("SHORTEST") || at_keyword("SIMPLE") || at_keyword("TRAIL");
  }

  QueryPtr parse_path_query() {
    std::optional<std::string> path_var;
    if (!at_restrictor()) {
      auto id = peek_ident();
      if (!id.empty()) {
        std::size_t save = pos_;
        std::string name = variable();
        if (accept("=")) {
          path_var = std::move(name);
        } else {
          pos_ = save;
        }
      }
    }
    Restrictor r = parse_restrictor();
    auto p = parse_union();
    return path_var ? Query::bound(*path_var, r, p) : Query::restricted(r, p);
  }

  Restrictor parse_restrictor() {
    if (accept_keyword("SIMPLE")) return Restrictor::Simple;
    if (accept_keyword("TRAIL")) return Restrictor::Trail;
    if (accept_keyword("SHORTEST")) {
      if (accept_keyword("SIMPLE")) return Restrictor::ShortestSimple;
      if (accept_keyword("TRAIL")) return Restrictor::ShortestTrail;
      return Restrictor::Shortest;
    }
    fail("expected restrictor", {"SIMPLE", "TRAIL", "SHORTEST"});
  }

  // ---- patterns ----

  PatternPtr parse_union() {
    auto p = parse_concat();
    while (accept("+")) p = Pattern::alt(p, parse_concat());
    return p;
  }

  bool at_atom() {
    skip_ws();
    return looking_at("(") || looking_at("[") || looking_at("-[") || looking_at("->") ||
           looking_at("--") || looking_at("<-");
  }

  PatternPtr parse_concat() {
    auto p = parse_postfix();
    while (at_atom()) p = Pattern::concat(p, parse_postfix());
    return p;
  }

  PatternPtr parse_postfix() {
    auto p = parse_atom();
    while (true) {
      skip_ws();
      if (peek_char() == '<' && peek_char(1) != '-') {
        ++pos_;
        auto c = parse_or();
        expect(">");
        p = Pattern::cond(p, c);
      } else if (peek_char() == '{') {
        std::size_t at = pos_;
        ++pos_;
        std::uint64_t n = integer();
        std::uint64_t m = n;
        if (accept("..")) {
          skip_ws();
          m = std::isdigit(static_cast<unsigned char>(peek_char())) ? integer() : kUnbounded;
        }
        expect("}");
        if (m < n) fail_at(at, "repetition lower bound exceeds upper bound", {});
        p = Pattern::repeat(p, n, m);
      } else {
        return p;
      }
    }
  }

  Descriptor parse_descriptor(char close) {
    Descriptor d;
    skip_ws();
    if (peek_char() != ':' && peek_char() != close) d.variable = variable();
    if (accept(":")) d.label = identifier("label");
    return d;
  }

  PatternPtr parse_atom() {
    skip_ws();
    if (accept("(")) {
      auto d = parse_descriptor(')');
      expect(")");
      return Pattern::node(d);
    }
    if (accept("-[")) {
      auto d = parse_descriptor(']');
      expect("]");
      if (accept_raw("->")) return Pattern::edge(Direction::Forward, d);
      if (accept_raw("-")) return Pattern::edge(Direction::Undirected, d);
      fail("expected edge end", {"]->", "]-"});
    }
    if (accept("<-[")) {
      auto d = parse_descriptor(']');
      expect("]");
      if (!accept_raw("-")) fail("expected edge end", {"]-"});
      return Pattern::edge(Direction::Backward, d);
    }
    if (accept("[")) {
      auto p = parse_union();
      expect("]");
      return p;
    }
    if (accept("->")) return Pattern::edge(Direction::Forward);
    if (accept("<-")) return Pattern::edge(Direction::Backward);
    if (accept("--")) return Pattern::edge(Direction::Undirected);
    fail("expected pattern", {"(", "[", "-[", "<-[", "->", "<-", "--"});
  }

  // ---- conditions ----

  ConditionPtr parse_or() {
    auto c = parse_and();
    while (accept_keyword("OR")) c = Condition::disj(c, parse_and());
    return c;
  }

  ConditionPtr parse_and() {
    auto c = parse_not();
    while (accept_keyword("AND")) c = Condition::conj(c, parse_not());
    return c;
  }

  ConditionPtr parse_not() {
    if (accept_keyword("NOT")) return Condition::negate(parse_not());
    if (accept("(")) {
      auto c = parse_or();
      expect(")");
      return c;
    }
    std::string var = variable();
    expect(".");
    std::string key = identifier("property key");
    expect("=");
    skip_ws();
    char c = peek_char();
    if (c == '"') return Condition::prop_eq_const(var, key, string_literal());
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      bool negative = c == '-';
      if (negative) ++pos_;
      std::size_t start = pos_;
      std::uint64_t magnitude = integer();
      if (magnitude > (negative ? 9223372036854775808ULL : 9223372036854775807ULL)) {
        fail_at(start, "integer out of range", {"integer"});
      }
      std::int64_t value =
          negative ? static_cast<std::int64_t>(0 - magnitude) : static_cast<std::int64_t>(magnitude);
      return Condition::prop_eq_const(var, key, value);
    }
    if (accept_keyword("true")) return Condition::prop_eq_const(var, key, true);
    if (accept_keyword("false")) return Condition::prop_eq_const(var, key, false);
    std::string other = variable();
    expect(".");
    std::string other_key = identifier("property key");
    return Condition::prop_eq_prop(var, key, other, other_key);
  }

  std::string string_literal() {
    std::size_t start = pos_;
    ++pos_;
    std::string out;
    while (!at_end() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out.push_back(text_[pos_++]);
    }
    if (at_end()) fail_at(start, "unterminated string literal", {"\""});
    ++pos_;
    return out;
  }
};

}  // namespace

PatternPtr parse_pattern(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).pattern_only();
}

QueryPtr parse_query(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).query_only();
}

RuleSet parse_ruleset(std::string_view text, const ParseOptions& options) {
  RuleSet rs = Parser(text, options).ruleset();
  for (std::size_t i = 1; i < rs.rules.size(); ++i) {
    if (rs.rules[i].head.size() != rs.rules[0].head.size()) {
      throw ParseError("rule " + std::to_string(i + 1) + " has arity " +
                           std::to_string(rs.rules[i].head.size()) + ", expected " +
                           std::to_string(rs.rules[0].head.size()),
                       1, 1, {});
    }
  }
  return rs;
}

}  // namespace gpc
