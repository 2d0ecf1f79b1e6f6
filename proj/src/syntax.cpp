#include <sstream>

#include "gpc/syntax.hpp"

namespace gpc {

bool is_shortest(Restrictor r) {
  return r == Restrictor::Shortest || r == Restrictor::ShortestSimple ||
         r == Restrictor::ShortestTrail;
}

bool requires_trail(Restrictor r) {
  return r == Restrictor::Trail || r == Restrictor::ShortestTrail;
}

bool requires_simple(Restrictor r) {
  return r == Restrictor::Simple || r == Restrictor::ShortestSimple;
}

std::string_view restrictor_name(Restrictor r) {
  switch (r) {
    case Restrictor::Simple:
      return "SIMPLE";
    case Restrictor::Trail:
      return "TRAIL";
    case Restrictor::Shortest:
      return "SHORTEST";
    case Restrictor::ShortestSimple:
      return "SHORTEST SIMPLE";
    case Restrictor::ShortestTrail:
      return "SHORTEST TRAIL";
  }
  return "?";
}

ConditionPtr Condition::prop_eq_const(std::string var, std::string key, Constant c) {
  auto out = std::make_shared<Condition>();
  out->kind = Kind::PropEqConst;
  out->variable = std::move(var);
  out->key = std::move(key);
  out->constant = std::move(c);
  return out;
}

ConditionPtr Condition::prop_eq_prop(std::string var, std::string key, std::string other_var,
                                     std::string other_key) {
  auto out = std::make_shared<Condition>();
  out->kind = Kind::PropEqProp;
  out->variable = std::move(var);
  out->key = std::move(key);
  out->other_variable = std::move(other_var);
  out->other_key = std::move(other_key);
  return out;
}

namespace {
ConditionPtr connective(Condition::Kind kind, ConditionPtr a, ConditionPtr b) {
  auto out = std::make_shared<Condition>();
  out->kind = kind;
  out->lhs = std::move(a);
  out->rhs = std::move(b);
  return out;
}
}  // namespace

ConditionPtr Condition::conj(ConditionPtr a, ConditionPtr b) {
  return connective(Kind::And, std::move(a), std::move(b));
}
ConditionPtr Condition::disj(ConditionPtr a, ConditionPtr b) {
  return connective(Kind::Or, std::move(a), std::move(b));
}
ConditionPtr Condition::negate(ConditionPtr a) {
  return connective(Kind::Not, std::move(a), nullptr);
}

namespace {
template <typename T>
bool same_ptr(const std::shared_ptr<const T>& a, const std::shared_ptr<const T>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}
}  // namespace

bool operator==(const Condition& a, const Condition& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Condition::Kind::PropEqConst:
      return a.variable == b.variable && a.key == b.key && a.constant == b.constant;
    case Condition::Kind::PropEqProp:
      return a.variable == b.variable && a.key == b.key && a.other_variable == b.other_variable &&
             a.other_key == b.other_key;
    case Condition::Kind::And:
    case Condition::Kind::Or:
      return same_ptr(a.lhs, b.lhs) && same_ptr(a.rhs, b.rhs);
    case Condition::Kind::Not:
      return same_ptr(a.lhs, b.lhs);
  }
  return false;
}

PatternPtr Pattern::node(Descriptor d) {
  auto out = std::make_shared<Pattern>();
  out->kind = Kind::Node;
  out->descriptor = std::move(d);
  return out;
}

PatternPtr Pattern::edge(Direction dir, Descriptor d) {
  auto out = std::make_shared<Pattern>();
  out->kind = Kind::Edge;
  out->direction = dir;
  out->descriptor = std::move(d);
  return out;
}

PatternPtr Pattern::alt(PatternPtr a, PatternPtr b) {
  auto out = std::make_shared<Pattern>();
  out->kind = Kind::Union;
  out->lhs = std::move(a);
  out->rhs = std::move(b);
  return out;
}

PatternPtr Pattern::concat(PatternPtr a, PatternPtr b) {
  auto out = std::make_shared<Pattern>();
  out->kind = Kind::Concat;
  out->lhs = std::move(a);
  out->rhs = std::move(b);
  return out;
}

PatternPtr Pattern::cond(PatternPtr p, ConditionPtr c) {
  auto out = std::make_shared<Pattern>();
  out->kind = Kind::Cond;
  out->lhs = std::move(p);
  out->condition = std::move(c);
  return out;
}

PatternPtr Pattern::repeat(PatternPtr p, std::uint64_t min, std::uint64_t max) {
  auto out = std::make_shared<Pattern>();
  out->kind = Kind::Repeat;
  out->lhs = std::move(p);
  out->min = min;
  out->max = max;
  return out;
}

bool operator==(const Pattern& a, const Pattern& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Pattern::Kind::Node:
      return a.descriptor == b.descriptor;
    case Pattern::Kind::Edge:
      return a.direction == b.direction && a.descriptor == b.descriptor;
    case Pattern::Kind::Union:
    case Pattern::Kind::Concat:
      return same_ptr(a.lhs, b.lhs) && same_ptr(a.rhs, b.rhs);
    case Pattern::Kind::Cond:
      return same_ptr(a.lhs, b.lhs) && same_ptr(a.condition, b.condition);
    case Pattern::Kind::Repeat:
      return a.min == b.min && a.max == b.max && same_ptr(a.lhs, b.lhs);
  }
  return false;
}

PatternPtr concat_all(const std::vector<PatternPtr>& factors) {
  PatternPtr out = factors.at(0);
  for (std::size_t i = 1; i < factors.size(); ++i) out = Pattern::concat(out, factors[i]);
  return out;
}

QueryPtr Query::restricted(Restrictor r, PatternPtr p) {
  auto out = std::make_shared<Query>();
  out->kind = Kind::Restricted;
  out->restrictor = r;
  out->pattern = std::move(p);
  return out;
}

QueryPtr Query::bound(std::string var, Restrictor r, PatternPtr p) {
  auto out = std::make_shared<Query>();
  out->kind = Kind::Bound;
  out->path_variable = std::move(var);
  out->restrictor = r;
  out->pattern = std::move(p);
  return out;
}

QueryPtr Query::join(QueryPtr a, QueryPtr b) {
  auto out = std::make_shared<Query>();
  out->kind = Kind::Join;
  out->lhs = std::move(a);
  out->rhs = std::move(b);
  return out;
}

bool operator==(const Query& a, const Query& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Query::Kind::Restricted:
      return a.restrictor == b.restrictor && same_ptr(a.pattern, b.pattern);
    case Query::Kind::Bound:
      return a.path_variable == b.path_variable && a.restrictor == b.restrictor &&
             same_ptr(a.pattern, b.pattern);
    case Query::Kind::Join:
      return same_ptr(a.lhs, b.lhs) && same_ptr(a.rhs, b.rhs);
  }
  return false;
}

bool operator==(const RuleSet& a, const RuleSet& b) {
  if (a.rules.size() != b.rules.size()) return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    if (a.rules[i].head != b.rules[i].head) return false;
    if (!same_ptr(a.rules[i].body, b.rules[i].body)) return false;
  }
  return true;
}

// ---- rendering ----

namespace {

std::string render_descriptor(const Descriptor& d) {
  std::string out = d.variable.value_or("");
  if (d.label) out += ":" + *d.label;
  return out;
}

bool is_empty(const Descriptor& d) { return !d.variable && !d.label; }

// Operand of a postfix operator: atoms and other postfix forms stay bare.
std::string render_postfix_operand(const Pattern& p) {
  if (p.kind == Pattern::Kind::Union || p.kind == Pattern::Kind::Concat) {
    return "[" + render(p) + "]";
  }
  return render(p);
}

}  // namespace

std::string render(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Node:
      return "(" + render_descriptor(p.descriptor) + ")";
    case Pattern::Kind::Edge: {
      if (is_empty(p.descriptor)) {
        switch (p.direction) {
          case Direction::Forward:
            return "->";
          case Direction::Backward:
            return "<-";
          case Direction::Undirected:
            return "--";
        }
      }
      std::string d = render_descriptor(p.descriptor);
      switch (p.direction) {
        case Direction::Forward:
          return "-[" + d + "]->";
        case Direction::Backward:
          return "<-[" + d + "]-";
        case Direction::Undirected:
          return "-[" + d + "]-";
      }
      return {};
    }
    case Pattern::Kind::Union:
      return "[" + render(*p.lhs) + "] + [" + render(*p.rhs) + "]";
    case Pattern::Kind::Concat: {
      std::string left = p.lhs->kind == Pattern::Kind::Union ? "[" + render(*p.lhs) + "]"
                                                              : render(*p.lhs);
      bool wrap_right = p.rhs->kind == Pattern::Kind::Union || p.rhs->kind == Pattern::Kind::Concat;
      std::string right = wrap_right ? "[" + render(*p.rhs) + "]" : render(*p.rhs);
      return left + " " + right;
    }
    case Pattern::Kind::Cond:
      return render_postfix_operand(*p.lhs) + "<" + render(*p.condition) + ">";
    case Pattern::Kind::Repeat: {
      std::string q = "{" + std::to_string(p.min) + "..";
      if (p.max != kUnbounded) q += std::to_string(p.max);
      q += "}";
      return render_postfix_operand(*p.lhs) + q;
    }
  }
  return {};
}

std::string render(const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::PropEqConst:
      return c.variable + "." + c.key + " = " + constant_to_text(c.constant);
    case Condition::Kind::PropEqProp:
      return c.variable + "." + c.key + " = " + c.other_variable + "." + c.other_key;
    case Condition::Kind::And:
      return "(" + render(*c.lhs) + " AND " + render(*c.rhs) + ")";
    case Condition::Kind::Or:
      return "(" + render(*c.lhs) + " OR " + render(*c.rhs) + ")";
    case Condition::Kind::Not:
      return "NOT " + render(*c.lhs);
  }
  return {};
}

std::string render(const Query& q) {
  switch (q.kind) {
    case Query::Kind::Restricted:
      return std::string(restrictor_name(q.restrictor)) + " " + render(*q.pattern);
    case Query::Kind::Bound:
      return q.path_variable + " = " + std::string(restrictor_name(q.restrictor)) + " " +
             render(*q.pattern);
    case Query::Kind::Join:
      return render(*q.lhs) + ", " + render(*q.rhs);
  }
  return {};
}

std::string render(const RuleSet& rs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < rs.rules.size(); ++i) {
    if (i > 0) out << ";\n";
    out << "Ans(";
    for (std::size_t j = 0; j < rs.rules[i].head.size(); ++j) {
      if (j > 0) out << ", ";
      out << rs.rules[i].head[j];
    }
    out << ") <- " << render(*rs.rules[i].body);
  }
  return out.str();
}

// ---- variables ----

namespace {

void collect_variables(const Pattern& p, std::set<std::string>& out) {
  switch (p.kind) {
    case Pattern::Kind::Node:
    case Pattern::Kind::Edge:
      if (p.descriptor.variable) out.insert(*p.descriptor.variable);
      return;
    case Pattern::Kind::Union:
    case Pattern::Kind::Concat:
      collect_variables(*p.lhs, out);
      collect_variables(*p.rhs, out);
      return;
    case Pattern::Kind::Cond:
    case Pattern::Kind::Repeat:
      collect_variables(*p.lhs, out);
      return;
  }
}

void collect_condition_variables(const Condition& c, std::set<std::string>& out) {
  switch (c.kind) {
    case Condition::Kind::PropEqConst:
      out.insert(c.variable);
      return;
    case Condition::Kind::PropEqProp:
      out.insert(c.variable);
      out.insert(c.other_variable);
      return;
    case Condition::Kind::And:
    case Condition::Kind::Or:
      collect_condition_variables(*c.lhs, out);
      collect_condition_variables(*c.rhs, out);
      return;
    case Condition::Kind::Not:
      collect_condition_variables(*c.lhs, out);
      return;
  }
}

}  // namespace

std::set<std::string> variables(const Pattern& p) {
  std::set<std::string> out;
  collect_variables(p, out);
  return out;
}

std::set<std::string> variables(const Query& q) {
  switch (q.kind) {
    case Query::Kind::Restricted:
      return variables(*q.pattern);
    case Query::Kind::Bound: {
      auto out = variables(*q.pattern);
      out.insert(q.path_variable);
      return out;
    }
    case Query::Kind::Join: {
      auto out = variables(*q.lhs);
      auto rhs = variables(*q.rhs);
      out.insert(rhs.begin(), rhs.end());
      return out;
    }
  }
  return {};
}

std::set<std::string> condition_variables(const Condition& c) {
  std::set<std::string> out;
  collect_condition_variables(c, out);
  return out;
}

}  // namespace gpc
