#pragma once

// GPC+ rule sets: projection plus top-level union, and translations from
// 2RPQs, C2RPQs and NREs.

#include <set>
#include <string>
#include <vector>

#include "gpc/eval.hpp"
#include "gpc/nre.hpp"
#include "gpc/syntax.hpp"

namespace gpc {

using ValueTuple = std::vector<Value>;

// Union over the rules of the head projections. Type-checks every body.
std::set<ValueTuple> eval_ruleset(const PropertyGraph& g, const RuleSet& rules,
                                  const EvalConfig& cfg, EvalStats* stats = nullptr);

// Pattern for a nest-free expression, without endpoint nodes.
PatternPtr translate_regex_body(const Nre& regex);

// (source) pi (target) for a nest-free expression.
PatternPtr translate_2rpq(const Nre& regex, const std::string& source = "x",
                          const std::string& target = "y");

RuleSet translate_c2rpq(const C2rpq& q);

// Ans(x, y) <- SHORTEST (x) pi (y). Nests introduce fresh variables _v0, _v1, ...
RuleSet translate_nre(const Nre& e);

}  // namespace gpc
