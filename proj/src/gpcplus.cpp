#include "gpc/gpcplus.hpp"

#include <stdexcept>

namespace gpc {

std::set<ValueTuple> eval_ruleset(const PropertyGraph& g, const RuleSet& rules,
                                  const EvalConfig& cfg, EvalStats* stats) {
  std::set<ValueTuple> out;
  EvalStats total;
  for (const auto& rule : rules.rules) {
    infer_schema(*rule.body);
    EvalStats local;
    for (const auto& answer : eval_query(g, *rule.body, cfg, &local)) {
      ValueTuple tuple;
      tuple.reserve(rule.head.size());
      for (const auto& x : rule.head) tuple.push_back(answer.bindings.at(x));
      out.insert(std::move(tuple));
    }
    total.bound_used = std::max(total.bound_used, local.bound_used);
    total.layers_computed += local.layers_computed;
  }
  if (stats) *stats = total;
  return out;
}

namespace {

Descriptor labelled(const std::string& a) { return Descriptor{std::nullopt, a}; }

Descriptor var_desc(const std::string& x) { return Descriptor{x, std::nullopt}; }

class NreTranslator {
 public:
  PatternPtr translate(const Nre& e) {
    std::vector<PatternPtr> factors;
    flatten(e, factors);
    return concat_all(factors);
  }

 private:
  std::size_t next_var_ = 0;

  std::string fresh() { return std::string(kReservedPrefix) + std::to_string(next_var_++); }

  void flatten(const Nre& e, std::vector<PatternPtr>& out) {
    switch (e.kind) {
      case Nre::Kind::Concat:
        flatten(*e.lhs, out);
        flatten(*e.rhs, out);
        return;
      case Nre::Kind::Nest: {
        std::string z = fresh();
        out.push_back(Pattern::node(var_desc(z)));
        out.push_back(translate(*e.lhs));
        out.push_back(Pattern::node());
        out.push_back(walk_back(*e.lhs));
        out.push_back(Pattern::node(var_desc(z)));
        return;
      }
      default:
        out.push_back(translate_single(e));
        return;
    }
  }

  PatternPtr translate_single(const Nre& e) {
    switch (e.kind) {
      case Nre::Kind::Label:
        return Pattern::edge(Direction::Forward, labelled(e.label));
      case Nre::Kind::Inverse:
        return Pattern::edge(Direction::Backward, labelled(e.label));
      case Nre::Kind::Union:
        return Pattern::alt(translate(*e.lhs), translate(*e.rhs));
      case Nre::Kind::Plus:
        return Pattern::repeat(translate(*e.lhs), 1, kUnbounded);
      case Nre::Kind::Star:
        return Pattern::repeat(translate(*e.lhs), 0, kUnbounded);
      default:
        return translate(e);
    }
  }

  // Single-label nests walk back over unlabeled edges with the same
  // quantifier; anything else walks back over an inverted copy.
  static PatternPtr walk_back(const Nre& f) {
    const Nre* core = &f;
    std::uint64_t min = 1, max = 1;
    if (f.kind == Nre::Kind::Plus || f.kind == Nre::Kind::Star) {
      core = f.lhs.get();
      min = f.kind == Nre::Kind::Plus ? 1 : 0;
      max = kUnbounded;
    }
    if (core->kind == Nre::Kind::Label || core->kind == Nre::Kind::Inverse) {
      auto back = Pattern::edge(core->kind == Nre::Kind::Label ? Direction::Backward
                                                               : Direction::Forward);
      if (min == 1 && max == 1) return back;
      return Pattern::repeat(back, min, max);
    }
    return inverted(f);
  }

  static PatternPtr inverted(const Nre& f) {
    switch (f.kind) {
      case Nre::Kind::Label:
        return Pattern::edge(Direction::Backward, labelled(f.label));
      case Nre::Kind::Inverse:
        return Pattern::edge(Direction::Forward, labelled(f.label));
      case Nre::Kind::Concat:
        return Pattern::concat(inverted(*f.rhs), inverted(*f.lhs));
      case Nre::Kind::Union:
        return Pattern::alt(inverted(*f.lhs), inverted(*f.rhs));
      case Nre::Kind::Plus:
        return Pattern::repeat(inverted(*f.lhs), 1, kUnbounded);
      case Nre::Kind::Star:
        return Pattern::repeat(inverted(*f.lhs), 0, kUnbounded);
      case Nre::Kind::Nest:
        return Pattern::node();
    }
    return Pattern::node();
  }
};

void leaves(const PatternPtr& p, std::vector<PatternPtr>& out) {
  if (p->kind == Pattern::Kind::Concat) {
    leaves(p->lhs, out);
    leaves(p->rhs, out);
  } else {
    out.push_back(p);
  }
}

// (source) body (target) as one left-deep chain, the shape the parser builds.
PatternPtr endpoints(const std::string& source, const PatternPtr& body, const std::string& target) {
  std::vector<PatternPtr> factors{Pattern::node(var_desc(source))};
  leaves(body, factors);
  factors.push_back(Pattern::node(var_desc(target)));
  return concat_all(factors);
}

RuleSet shortest_rule(std::vector<std::string> head, QueryPtr body) {
  RuleSet rs;
  rs.rules.push_back(Rule{std::move(head), std::move(body)});
  return rs;
}

}  // namespace

PatternPtr translate_regex_body(const Nre& regex) {
  if (!is_regex(regex)) throw std::invalid_argument("2RPQ expressions cannot contain nests");
  return NreTranslator().translate(regex);
}

PatternPtr translate_2rpq(const Nre& regex, const std::string& source, const std::string& target) {
  return endpoints(source, translate_regex_body(regex), target);
}

RuleSet translate_c2rpq(const C2rpq& q) {
  if (q.atoms.empty()) throw std::invalid_argument("C2RPQ needs at least one atom");
  QueryPtr body;
  for (const auto& atom : q.atoms) {
    auto part = Query::restricted(Restrictor::Shortest,
                                  translate_2rpq(*atom.regex, atom.source, atom.target));
    body = body ? Query::join(body, part) : part;
  }
  return shortest_rule(q.head, body);
}

RuleSet translate_nre(const Nre& e) {
  auto pattern = endpoints("x", NreTranslator().translate(e), "y");
  return shortest_rule({"x", "y"}, Query::restricted(Restrictor::Shortest, pattern));
}

}  // namespace gpc
