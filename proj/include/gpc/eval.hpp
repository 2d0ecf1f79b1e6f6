#pragma once

// Answer-set evaluation of patterns and queries.

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gpc/graph.hpp"
#include "gpc/syntax.hpp"
#include "gpc/typing.hpp"
#include "gpc/value.hpp"

namespace gpc {

struct EvalConfig {
  CollectMode collect_mode = CollectMode::Grouping;
  std::optional<std::uint64_t> max_len;  // nullopt: automatic bound
  bool lenient_unify = false;
  std::uint64_t max_answers = 100000;
  std::uint64_t shortest_bound_cap = 1000000;
};

struct EvalStats {
  std::uint64_t bound_used = 0;
  std::uint64_t layers_computed = 0;
};

// Unification of two assignments; nullopt when they disagree.
std::optional<Assignment> unify(const Assignment& a, const Assignment& b, bool lenient = false);

bool satisfies(const PropertyGraph& g, const Assignment& mu, const Condition& theta);

// Group boundaries i_1 < ... < i_{l+1} (0-based, last one = lengths.size()).
std::vector<std::size_t> refactor(const std::vector<std::size_t>& lengths);

// collect over a non-empty segment sequence; nullopt when undefined.
std::optional<Assignment> collect(CollectMode mode, const std::vector<Match>& segments,
                                  bool lenient = false);

// Answers of p with len <= cfg.max_len. With an automatic bound, layers are
// computed until none can be produced any more (or the answer ceiling trips).
std::vector<Match> eval_pattern(const PropertyGraph& g, const Pattern& p, const EvalConfig& cfg,
                                EvalStats* stats = nullptr);

// n-th power of p restricted to len <= max_len, computed literally from the
// answers of p.
std::vector<Match> power(const PropertyGraph& g, const Pattern& p, std::uint64_t n,
                         std::uint64_t max_len, const EvalConfig& cfg);

std::vector<Answer> eval_query(const PropertyGraph& g, const Query& q, const EvalConfig& cfg,
                               EvalStats* stats = nullptr);

// Parse-tree nodes plus the binary size of repetition bounds.
std::uint64_t structural_size(const Pattern& p);

std::uint64_t default_length_bound(Restrictor r, const PropertyGraph& g, const Pattern& p,
                                   std::uint64_t cap = 1000000);

// Positions (i, j) such that (p[i..j], empty assignment) is an answer of a
// variable-free pattern. Throws std::invalid_argument if p has variables.
std::set<std::pair<std::size_t, std::size_t>> pairs_no_vars(const PropertyGraph& g,
                                                            const Pattern& pattern,
                                                            const Path& p);

// Superset of the (src, tgt) pairs of answers of p: variables under
// repetition, group contents and unification inside repetitions are
// ignored, singleton variables are tracked exactly. nullopt when the
// computation would exceed `limit` tuples or the graph is too large.
std::optional<std::set<std::pair<NodeIndex, NodeIndex>>> reachable_endpoints(
    const PropertyGraph& g, const Pattern& p, std::size_t limit = 200000);

}  // namespace gpc
