#pragma once

// Brute-force reference evaluators. They depend on the graph, syntax and
// value types only, never on the evaluation engine.

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gpc/errors.hpp"
#include "gpc/graph.hpp"
#include "gpc/nre.hpp"
#include "gpc/syntax.hpp"
#include "gpc/typing.hpp"
#include "gpc/value.hpp"

namespace gpc::oracle {

struct Budget {
  std::uint64_t max_path_len = 4;
  std::uint64_t max_answers = 200000;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

struct Options {
  CollectMode mode = CollectMode::Grouping;
  bool lenient_unify = false;
  // Path length bound for queries; nullopt picks the restrictor's own bound.
  std::optional<std::uint64_t> max_len;
  std::uint64_t shortest_cap = 1000000;
};

// Every graph-valid path with len <= L, sorted.
std::vector<Path> enumerate_paths(const PropertyGraph& g, std::uint64_t L,
                                  const Budget& budget = {});

// { mu : (p, mu) is an answer of pattern on g }.
std::set<Assignment> naive_match(const PropertyGraph& g, const Pattern& pattern, const Path& p,
                                 const Options& options = {}, const Budget& budget = {});

std::vector<Answer> brute_force_query(const PropertyGraph& g, const Query& q,
                                      const Options& options = {}, const Budget& budget = {});

using NodePairs = std::set<std::pair<NodeIndex, NodeIndex>>;

// Pairs connected by a path over directed edges whose word matches regex.
NodePairs product_2rpq(const PropertyGraph& g, const Nre& regex);

NodePairs recursive_nre(const PropertyGraph& g, const Nre& e);

}  // namespace gpc::oracle
