#include "gpc/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace gpc::oracle {

namespace {

struct Ctx {
  const PropertyGraph& g;
  const Options& opt;
  const Budget& budget;
  std::uint64_t work = 0;

  void tick() {
    if (++work > 100 * budget.max_answers) {
      throw BudgetExceeded("oracle work budget exhausted");
    }
  }
};

// Literal unification: shared variables must agree (or, leniently, one of
// them is Nothing).
std::optional<Assignment> merge(const Assignment& a, const Assignment& b, bool lenient) {
  Assignment out;
  for (const auto& [x, v] : a) {
    auto it = b.find(x);
    if (it == b.end()) {
      out.emplace(x, v);
    } else if (v == it->second) {
      out.emplace(x, v);
    } else if (lenient && v.kind == Value::Kind::Nothing) {
      out.emplace(x, it->second);
    } else if (lenient && it->second.kind == Value::Kind::Nothing) {
      out.emplace(x, v);
    } else {
      return std::nullopt;
    }
  }
  for (const auto& [x, v] : b) {
    if (!a.contains(x)) out.emplace(x, v);
  }
  return out;
}

const Constant* prop(const PropertyGraph& g, const Assignment& mu, const std::string& x,
                     const std::string& key) {
  auto it = mu.find(x);
  if (it == mu.end()) return nullptr;
  if (it->second.kind == Value::Kind::Node) return g.node_property(it->second.id, key);
  if (it->second.kind == Value::Kind::Edge) return g.edge_property(it->second.id, key);
  return nullptr;
}

bool holds(const PropertyGraph& g, const Assignment& mu, const Condition& c) {
  if (c.kind == Condition::Kind::Not) return !holds(g, mu, *c.lhs);
  if (c.kind == Condition::Kind::And) return holds(g, mu, *c.lhs) && holds(g, mu, *c.rhs);
  if (c.kind == Condition::Kind::Or) return holds(g, mu, *c.lhs) || holds(g, mu, *c.rhs);
  const Constant* left = prop(g, mu, c.variable, c.key);
  if (!left) return false;
  if (c.kind == Condition::Kind::PropEqConst) return *left == c.constant;
  const Constant* right = prop(g, mu, c.other_variable, c.other_key);
  return right && *left == *right;
}

bool edge_fits(const PropertyGraph& g, const Pattern& pat, NodeIndex a, EdgeIndex e, NodeIndex b) {
  if (pat.descriptor.label && !g.edge_has_label(e, *pat.descriptor.label)) return false;
  NodeIndex s = g.edge_source(e), t = g.edge_target(e);
  switch (pat.direction) {
    case Direction::Forward:
      return g.is_directed(e) && s == a && t == b;
    case Direction::Backward:
      return g.is_directed(e) && t == a && s == b;
    case Direction::Undirected:
      return !g.is_directed(e) && ((s == a && t == b) || (s == b && t == a));
  }
  return false;
}

std::set<Assignment> match(Ctx& ctx, const Pattern& pat, const Path& p);

// Maximal runs of edgeless segments become one group; others stand alone.
std::vector<std::pair<std::size_t, std::size_t>> groups_of(const std::vector<std::size_t>& lens) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < lens.size();) {
    std::size_t j = i + 1;
    if (lens[i] == 0) {
      while (j < lens.size() && lens[j] == 0) ++j;
    }
    out.emplace_back(i, j);
    i = j;
  }
  return out;
}

std::set<Assignment> match_repeat(Ctx& ctx, const Pattern& rep, const Path& p) {
  const Pattern& body = *rep.lhs;
  const auto vars = variables(body);
  const std::size_t L = p.len();
  std::vector<std::vector<std::vector<Assignment>>> seg(L + 1,
                                                        std::vector<std::vector<Assignment>>(L + 1));
  for (std::size_t i = 0; i <= L; ++i) {
    for (std::size_t j = i; j <= L; ++j) {
      auto s = match(ctx, body, p.subpath(i, j));
      seg[i][j].assign(s.begin(), s.end());
    }
  }

  std::set<Assignment> out;
  if (rep.min == 0 && L == 0) {
    Assignment mu;
    for (const auto& x : vars) mu.emplace(x, Value::group({}));
    out.insert(mu);
  }

  struct Piece {
    std::size_t i, j;
    const Assignment* mu;
  };
  std::vector<Piece> seq;

  auto finish = [&]() {
    ctx.tick();
    const std::uint64_t k = seq.size();
    bool edgeless = std::any_of(seq.begin(), seq.end(), [](const Piece& s) { return s.i == s.j; });
    bool count_ok = (rep.min <= k && k <= rep.max) || (edgeless && k < rep.min && rep.min <= rep.max);
    if (!count_ok) return;
    std::vector<std::size_t> lens;
    for (const auto& s : seq) lens.push_back(s.j - s.i);
    std::vector<std::pair<Path, Assignment>> merged;
    for (auto [from, to] : groups_of(lens)) {
      for (std::size_t a = from; a < to; ++a) {
        for (std::size_t b = a + 1; b < to; ++b) {
          if (!merge(*seq[a].mu, *seq[b].mu, ctx.opt.lenient_unify)) return;
        }
      }
      Assignment acc = *seq[from].mu;
      for (std::size_t a = from + 1; a < to; ++a) acc = *merge(acc, *seq[a].mu, ctx.opt.lenient_unify);
      merged.emplace_back(p.subpath(seq[from].i, seq[to - 1].j), std::move(acc));
    }
    Assignment mu;
    for (const auto& x : vars) {
      std::vector<GroupItem> items;
      for (const auto& [path, m] : merged) items.push_back({path, m.at(x)});
      mu.emplace(x, Value::group(std::move(items)));
    }
    out.insert(std::move(mu));
  };

  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t pos, std::size_t run) {
    if (pos == L && !seq.empty()) finish();
    if (seq.size() + 1 > rep.max) return;
    if (ctx.opt.mode == CollectMode::Grouping && run < seg[pos][pos].size()) {
      for (const auto& mu : seg[pos][pos]) {
        seq.push_back({pos, pos, &mu});
        dfs(pos, run + 1);
        seq.pop_back();
      }
    }
    for (std::size_t j = pos + 1; j <= L; ++j) {
      for (const auto& mu : seg[pos][j]) {
        seq.push_back({pos, j, &mu});
        dfs(j, 0);
        seq.pop_back();
      }
    }
  };
  dfs(0, 0);
  return out;
}

std::set<Assignment> match(Ctx& ctx, const Pattern& pat, const Path& p) {
  ctx.tick();
  std::set<Assignment> out;
  switch (pat.kind) {
    case Pattern::Kind::Node:
      if (p.len() == 0 &&
          (!pat.descriptor.label || ctx.g.node_has_label(p.src(), *pat.descriptor.label))) {
        Assignment mu;
        if (pat.descriptor.variable) mu.emplace(*pat.descriptor.variable, Value::node(p.src()));
        out.insert(std::move(mu));
      }
      return out;
    case Pattern::Kind::Edge:
      if (p.len() == 1 && edge_fits(ctx.g, pat, p.node(0), p.edge(0), p.node(1))) {
        Assignment mu;
        if (pat.descriptor.variable) mu.emplace(*pat.descriptor.variable, Value::edge(p.edge(0)));
        out.insert(std::move(mu));
      }
      return out;
    case Pattern::Kind::Union: {
      auto all = variables(pat);
      for (const Pattern* side : {pat.lhs.get(), pat.rhs.get()}) {
        for (auto mu : match(ctx, *side, p)) {
          for (const auto& x : all) {
            if (!mu.contains(x)) mu.emplace(x, Value::nothing());
          }
          out.insert(std::move(mu));
        }
      }
      return out;
    }
    case Pattern::Kind::Concat:
      for (std::size_t i = 0; i <= p.len(); ++i) {
        auto left = match(ctx, *pat.lhs, p.subpath(0, i));
        if (left.empty()) continue;
        auto right = match(ctx, *pat.rhs, p.subpath(i, p.len()));
        for (const auto& a : left) {
          for (const auto& b : right) {
            if (auto mu = merge(a, b, false)) out.insert(std::move(*mu));
          }
        }
      }
      return out;
    case Pattern::Kind::Cond:
      for (auto& mu : match(ctx, *pat.lhs, p)) {
        if (holds(ctx.g, mu, *pat.condition)) out.insert(mu);
      }
      return out;
    case Pattern::Kind::Repeat:
      return match_repeat(ctx, pat, p);
  }
  return out;
}

std::uint64_t own_size(const Pattern& p) {
  auto bits = [](std::uint64_t v) {
    std::uint64_t b = 0;
    do {
      ++b;
      v /= 2;
    } while (v > 0);
    return b;
  };
  switch (p.kind) {
    case Pattern::Kind::Node:
    case Pattern::Kind::Edge:
      return 1;
    case Pattern::Kind::Union:
    case Pattern::Kind::Concat:
      return 1 + own_size(*p.lhs) + own_size(*p.rhs);
    case Pattern::Kind::Cond:
      return 1 + own_size(*p.lhs);
    case Pattern::Kind::Repeat:
      return 1 + own_size(*p.lhs) + bits(p.min) + (p.max == kUnbounded ? 1 : bits(p.max));
  }
  return 1;
}

std::uint64_t own_bound(const PropertyGraph& g, Restrictor r, const Pattern& p, std::uint64_t cap) {
  std::vector<std::uint64_t> bounds;
  if (r == Restrictor::Simple || r == Restrictor::ShortestSimple) bounds.push_back(g.node_count());
  if (r == Restrictor::Trail || r == Restrictor::ShortestTrail) bounds.push_back(g.edge_count());
  if (r == Restrictor::Shortest || r == Restrictor::ShortestSimple ||
      r == Restrictor::ShortestTrail) {
    std::uint64_t b = g.node_count() + g.edge_count();
    for (std::uint64_t i = 0; i < own_size(p) && b <= cap; ++i) b *= 2;
    bounds.push_back(std::min(b, cap));
  }
  return *std::min_element(bounds.begin(), bounds.end());
}

std::vector<Answer> query(Ctx& ctx, const Query& q) {
  if (q.kind == Query::Kind::Join) {
    auto left = query(ctx, *q.lhs);
    auto right = query(ctx, *q.rhs);
    std::set<Answer> out;
    for (const auto& a : left) {
      for (const auto& b : right) {
        ctx.tick();
        auto mu = merge(a.bindings, b.bindings, false);
        if (!mu) continue;
        Answer joined{a.paths, std::move(*mu)};
        joined.paths.insert(joined.paths.end(), b.paths.begin(), b.paths.end());
        out.insert(std::move(joined));
      }
    }
    return {out.begin(), out.end()};
  }
  const std::uint64_t L =
      ctx.opt.max_len ? *ctx.opt.max_len : own_bound(ctx.g, q.restrictor, *q.pattern, ctx.opt.shortest_cap);
  std::vector<std::pair<Path, Assignment>> found;
  for (const auto& p : enumerate_paths(ctx.g, L, ctx.budget)) {
    if ((q.restrictor == Restrictor::Trail || q.restrictor == Restrictor::ShortestTrail) &&
        !p.is_trail())
      continue;
    if ((q.restrictor == Restrictor::Simple || q.restrictor == Restrictor::ShortestSimple) &&
        !p.is_simple())
      continue;
    for (const auto& mu : match(ctx, *q.pattern, p)) found.emplace_back(p, mu);
  }
  if (is_shortest(q.restrictor)) {
    std::map<std::pair<NodeIndex, NodeIndex>, std::size_t> best;
    for (const auto& [p, mu] : found) {
      auto key = std::make_pair(p.src(), p.tgt());
      auto it = best.find(key);
      if (it == best.end() || p.len() < it->second) best[key] = p.len();
    }
    std::erase_if(found, [&](const auto& f) {
      return f.first.len() != best.at({f.first.src(), f.first.tgt()});
    });
  }
  std::set<Answer> out;
  for (auto& [p, mu] : found) {
    Answer a{{p}, mu};
    if (q.kind == Query::Kind::Bound) a.bindings.emplace(q.path_variable, Value::of_path(p));
    out.insert(std::move(a));
  }
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<Path> enumerate_paths(const PropertyGraph& g, std::uint64_t L, const Budget& budget) {
  if (L > budget.max_path_len) {
    throw BudgetExceeded("path length " + std::to_string(L) + " exceeds the oracle budget of " +
                         std::to_string(budget.max_path_len) + "; give an explicit length bound");
  }
  std::set<Path> out;
  std::vector<std::uint32_t> elements;
  std::function<void(std::uint64_t)> extend = [&](std::uint64_t len) {
    out.insert(Path(elements));
    if (out.size() > budget.max_answers) throw BudgetExceeded("too many paths for the oracle");
    if (len == L) return;
    NodeIndex u = elements.back();
    for (EdgeIndex e : g.incident_edges(u)) {
      NodeIndex s = g.edge_source(e), t = g.edge_target(e);
      std::vector<NodeIndex> next;
      if (s == u) next.push_back(t);
      if (t == u && s != t) next.push_back(s);
      for (NodeIndex v : next) {
        elements.push_back(e);
        elements.push_back(v);
        extend(len + 1);
        elements.pop_back();
        elements.pop_back();
      }
    }
  };
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    elements = {u};
    extend(0);
  }
  return {out.begin(), out.end()};
}

std::set<Assignment> naive_match(const PropertyGraph& g, const Pattern& pattern, const Path& p,
                                 const Options& options, const Budget& budget) {
  Ctx ctx{g, options, budget};
  return match(ctx, pattern, p);
}

std::vector<Answer> brute_force_query(const PropertyGraph& g, const Query& q,
                                      const Options& options, const Budget& budget) {
  Ctx ctx{g, options, budget};
  return query(ctx, q);
}

namespace {

struct Nfa {
  enum class Step { Epsilon, Forward, Backward };
  struct Arc {
    std::size_t to;
    Step step;
    std::string label;
  };
  std::vector<std::vector<Arc>> arcs;

  std::size_t add_state() {
    arcs.emplace_back();
    return arcs.size() - 1;
  }
  void link(std::size_t from, std::size_t to, Step step = Step::Epsilon, std::string label = {}) {
    arcs[from].push_back({to, step, std::move(label)});
  }

  // Thompson fragment: (entry, exit).
  std::pair<std::size_t, std::size_t> build(const Nre& e) {
    switch (e.kind) {
      case Nre::Kind::Label:
      case Nre::Kind::Inverse: {
        auto s = add_state(), t = add_state();
        link(s, t, e.kind == Nre::Kind::Label ? Step::Forward : Step::Backward, e.label);
        return {s, t};
      }
      case Nre::Kind::Concat: {
        auto [s1, t1] = build(*e.lhs);
        auto [s2, t2] = build(*e.rhs);
        link(t1, s2);
        return {s1, t2};
      }
      case Nre::Kind::Union: {
        auto s = add_state(), t = add_state();
        auto [s1, t1] = build(*e.lhs);
        auto [s2, t2] = build(*e.rhs);
        link(s, s1);
        link(s, s2);
        link(t1, t);
        link(t2, t);
        return {s, t};
      }
      case Nre::Kind::Plus:
      case Nre::Kind::Star: {
        auto s = add_state(), t = add_state();
        auto [s1, t1] = build(*e.lhs);
        link(s, s1);
        link(t1, t);
        link(t1, s1);
        if (e.kind == Nre::Kind::Star) link(s, t);
        return {s, t};
      }
      case Nre::Kind::Nest:
        throw std::invalid_argument("product construction takes nest-free expressions");
    }
    return {0, 0};
  }
};

using Matrix = std::vector<std::vector<bool>>;

Matrix relation(const PropertyGraph& g, const Nre& e) {
  const std::size_t n = g.node_count();
  Matrix r(n, std::vector<bool>(n, false));
  switch (e.kind) {
    case Nre::Kind::Label:
    case Nre::Kind::Inverse:
      for (EdgeIndex id = 0; id < g.directed_edge_count(); ++id) {
        if (!g.edge_has_label(id, e.label)) continue;
        if (e.kind == Nre::Kind::Label) {
          r[g.edge_source(id)][g.edge_target(id)] = true;
        } else {
          r[g.edge_target(id)][g.edge_source(id)] = true;
        }
      }
      return r;
    case Nre::Kind::Concat: {
      Matrix a = relation(g, *e.lhs), b = relation(g, *e.rhs);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          if (a[i][k])
            for (std::size_t j = 0; j < n; ++j)
              if (b[k][j]) r[i][j] = true;
      return r;
    }
    case Nre::Kind::Union: {
      Matrix a = relation(g, *e.lhs), b = relation(g, *e.rhs);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i][j] = a[i][j] || b[i][j];
      return r;
    }
    case Nre::Kind::Plus:
    case Nre::Kind::Star: {
      r = relation(g, *e.lhs);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          if (r[i][k])
            for (std::size_t j = 0; j < n; ++j)
              if (r[k][j]) r[i][j] = true;
      if (e.kind == Nre::Kind::Star)
        for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
      return r;
    }
    case Nre::Kind::Nest: {
      Matrix inner = relation(g, *e.lhs);
      for (std::size_t i = 0; i < n; ++i)
        r[i][i] = std::any_of(inner[i].begin(), inner[i].end(), [](bool b) { return b; });
      return r;
    }
  }
  return r;
}

}  // namespace

NodePairs product_2rpq(const PropertyGraph& g, const Nre& regex) {
  Nfa nfa;
  auto [start, accept] = nfa.build(regex);
  NodePairs out;
  for (NodeIndex origin = 0; origin < g.node_count(); ++origin) {
    std::set<std::pair<NodeIndex, std::size_t>> seen{{origin, start}};
    std::deque<std::pair<NodeIndex, std::size_t>> queue{{origin, start}};
    while (!queue.empty()) {
      auto [u, q] = queue.front();
      queue.pop_front();
      if (q == accept) out.emplace(origin, u);
      auto visit = [&](NodeIndex v, std::size_t s) {
        if (seen.emplace(v, s).second) queue.emplace_back(v, s);
      };
      for (const auto& arc : nfa.arcs[q]) {
        if (arc.step == Nfa::Step::Epsilon) {
          visit(u, arc.to);
          continue;
        }
        for (EdgeIndex e : g.incident_edges(u)) {
          if (!g.is_directed(e) || !g.edge_has_label(e, arc.label)) continue;
          if (arc.step == Nfa::Step::Forward && g.edge_source(e) == u) visit(g.edge_target(e), arc.to);
          if (arc.step == Nfa::Step::Backward && g.edge_target(e) == u) visit(g.edge_source(e), arc.to);
        }
      }
    }
  }
  return out;
}

NodePairs recursive_nre(const PropertyGraph& g, const Nre& e) {
  Matrix r = relation(g, e);
  NodePairs out;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j)
      if (r[i][j]) out.emplace(static_cast<NodeIndex>(i), static_cast<NodeIndex>(j));
  return out;
}

}  // namespace gpc::oracle
