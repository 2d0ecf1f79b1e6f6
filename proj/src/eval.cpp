#include "gpc/eval.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "gpc/errors.hpp"

namespace gpc {

std::optional<Assignment> unify(const Assignment& a, const Assignment& b, bool lenient) {
  Assignment out = a;
  for (const auto& [x, v] : b) {
    auto [it, inserted] = out.emplace(x, v);
    if (inserted || it->second == v) continue;
    if (lenient) {
      if (v.kind == Value::Kind::Nothing) continue;
      if (it->second.kind == Value::Kind::Nothing) {
        it->second = v;
        continue;
      }
    }
    return std::nullopt;
  }
  return out;
}

namespace {

const Constant* property_of(const PropertyGraph& g, const Value& v, const std::string& key) {
  if (v.kind == Value::Kind::Node) return g.node_property(v.id, key);
  if (v.kind == Value::Kind::Edge) return g.edge_property(v.id, key);
  return nullptr;
}

const Constant* lookup_property(const PropertyGraph& g, const Assignment& mu,
                                const std::string& var, const std::string& key) {
  auto it = mu.find(var);
  if (it == mu.end()) return nullptr;
  return property_of(g, it->second, key);
}

}  // namespace

bool satisfies(const PropertyGraph& g, const Assignment& mu, const Condition& theta) {
  switch (theta.kind) {
    case Condition::Kind::PropEqConst: {
      const Constant* c = lookup_property(g, mu, theta.variable, theta.key);
      return c && *c == theta.constant;
    }
    case Condition::Kind::PropEqProp: {
      const Constant* a = lookup_property(g, mu, theta.variable, theta.key);
      const Constant* b = lookup_property(g, mu, theta.other_variable, theta.other_key);
      return a && b && *a == *b;
    }
    case Condition::Kind::And:
      return satisfies(g, mu, *theta.lhs) && satisfies(g, mu, *theta.rhs);
    case Condition::Kind::Or:
      return satisfies(g, mu, *theta.lhs) || satisfies(g, mu, *theta.rhs);
    case Condition::Kind::Not:
      return !satisfies(g, mu, *theta.lhs);
  }
  return false;
}

std::vector<std::size_t> refactor(const std::vector<std::size_t>& lengths) {
  std::vector<std::size_t> bounds{0};
  std::size_t i = 0;
  while (i < lengths.size()) {
    if (lengths[i] > 0) {
      ++i;
    } else {
      while (i < lengths.size() && lengths[i] == 0) ++i;
    }
    bounds.push_back(i);
  }
  return bounds;
}

namespace {

Assignment lists_from_groups(const std::vector<Match>& groups, const Assignment& domain_source) {
  Assignment out;
  for (const auto& [x, unused] : domain_source) {
    std::vector<GroupItem> items;
    items.reserve(groups.size());
    for (const auto& grp : groups) items.push_back({grp.path, grp.mu.at(x)});
    out.emplace(x, Value::group(std::move(items)));
  }
  return out;
}

Path concat_all_paths(const std::vector<Match>& segments, std::size_t from, std::size_t to) {
  Path p = segments[from].path;
  for (std::size_t i = from + 1; i < to; ++i) p = *concat(p, segments[i].path);
  return p;
}

}  // namespace

std::optional<Assignment> collect(CollectMode mode, const std::vector<Match>& segments,
                                  bool lenient) {
  if (segments.empty()) throw std::invalid_argument("collect needs at least one segment");
  const Assignment& domain = segments.front().mu;
  if (mode == CollectMode::Dynamic) {
    for (const auto& s : segments) {
      if (s.path.len() == 0) return std::nullopt;
    }
  }
  if (mode != CollectMode::Grouping) return lists_from_groups(segments, domain);

  std::vector<std::size_t> lengths;
  lengths.reserve(segments.size());
  for (const auto& s : segments) lengths.push_back(s.path.len());
  auto bounds = refactor(lengths);
  std::vector<Match> groups;
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    std::optional<Assignment> merged = segments[bounds[k]].mu;
    for (std::size_t i = bounds[k] + 1; i < bounds[k + 1] && merged; ++i) {
      merged = unify(*merged, segments[i].mu, lenient);
    }
    if (!merged) return std::nullopt;
    groups.push_back({concat_all_paths(segments, bounds[k], bounds[k + 1]), std::move(*merged)});
  }
  return lists_from_groups(groups, domain);
}

std::uint64_t structural_size(const Pattern& p) {
  auto bits = [](std::uint64_t v) {
    std::uint64_t b = 1;
    while (v >>= 1) ++b;
    return b;
  };
  switch (p.kind) {
    case Pattern::Kind::Node:
    case Pattern::Kind::Edge:
      return 1;
    case Pattern::Kind::Union:
    case Pattern::Kind::Concat:
      return 1 + structural_size(*p.lhs) + structural_size(*p.rhs);
    case Pattern::Kind::Cond:
      return 1 + structural_size(*p.lhs);
    case Pattern::Kind::Repeat:
      return 1 + structural_size(*p.lhs) + bits(p.min) + (p.max == kUnbounded ? 1 : bits(p.max));
  }
  return 1;
}

std::uint64_t default_length_bound(Restrictor r, const PropertyGraph& g, const Pattern& p,
                                   std::uint64_t cap) {
  std::uint64_t bound = kUnbounded;
  if (requires_simple(r)) bound = std::min<std::uint64_t>(bound, g.node_count());
  if (requires_trail(r)) bound = std::min<std::uint64_t>(bound, g.edge_count());
  if (is_shortest(r)) {
    std::uint64_t base = g.node_count() + g.edge_count();
    std::uint64_t size = structural_size(p);
    std::uint64_t s = cap;
    if (size < 63 && base <= (cap >> size)) s = std::min(cap, base << size);
    bound = std::min(bound, s);
  }
  return bound;
}

namespace {

enum class PathFilter { None, Trail, Simple };

bool passes(PathFilter f, const Path& p) {
  switch (f) {
    case PathFilter::None:
      return true;
    case PathFilter::Trail:
      return p.is_trail();
    case PathFilter::Simple:
      return p.is_simple();
  }
  return true;
}

PathFilter filter_for(Restrictor r) {
  if (requires_simple(r)) return PathFilter::Simple;
  if (requires_trail(r)) return PathFilter::Trail;
  return PathFilter::None;
}

struct Layer {
  std::vector<std::vector<Match>> by_src;
  std::size_t size = 0;
};

// Repetition state. A state summarises a segment sequence by its path, the
// closed groups, the open edgeless group (if the last segment was edgeless)
// and whether any segment was edgeless. Once a sequence contains an edgeless
// segment, repeating that segment leaves the collected assignment unchanged,
// so every larger count is reachable too and only the minimum is kept.
struct StateKey {
  Path path;
  std::vector<Match> closed;
  std::optional<Assignment> open;
  bool absorbed = false;
  std::uint64_t exact_count = 0;  // 0 when absorbed

  auto operator<=>(const StateKey&) const = default;
  bool operator==(const StateKey&) const = default;
};

using StateLayer = std::map<StateKey, std::uint64_t>;

class Evaluator {
 public:
  Evaluator(const PropertyGraph& g, const EvalConfig& cfg, PathFilter filter)
      : g_(g), cfg_(cfg), filter_(filter) {}

  const Layer& layer(const Pattern& p, std::size_t l) {
    Data& d = data(p);
    while (d.layers.size() <= l) compute_next(p, d);
    return d.layers[l];
  }

  // True when no layer above l can be non-empty. Layers up to l must exist.
  bool exhausted(const Pattern& p, std::size_t l) {
    switch (p.kind) {
      case Pattern::Kind::Node:
        return true;
      case Pattern::Kind::Edge:
        return l >= 1;
      case Pattern::Kind::Cond:
        return exhausted(*p.lhs, l);
      case Pattern::Kind::Union:
        return exhausted(*p.lhs, l) && exhausted(*p.rhs, l);
      case Pattern::Kind::Concat: {
        bool le = exhausted(*p.lhs, l);
        bool re = exhausted(*p.rhs, l);
        auto lmax = max_nonempty(*p.lhs, l);
        auto rmax = max_nonempty(*p.rhs, l);
        if ((le && !lmax) || (re && !rmax)) return true;
        return le && re && *lmax + *rmax <= l;
      }
      case Pattern::Kind::Repeat: {
        if (!exhausted(*p.lhs, l)) return false;
        auto bmax = max_nonempty(*p.lhs, l);
        if (!bmax || *bmax == 0) return true;
        const Data& d = data(p);
        for (std::size_t k = 0; k < *bmax && k <= l; ++k) {
          if (!d.states[l - k].empty()) return false;
        }
        return true;
      }
    }
    return false;
  }

  std::uint64_t layers_computed() const { return layers_computed_; }

 private:
  struct Data {
    std::vector<Layer> layers;
    std::vector<StateLayer> states;  // Repeat only
    std::vector<std::string> domain; // Union: var(p); Repeat: var(body)
    bool initialised = false;
  };

  const PropertyGraph& g_;
  const EvalConfig& cfg_;
  PathFilter filter_;
  std::unordered_map<const Pattern*, Data> memo_;
  std::uint64_t stored_ = 0;
  std::uint64_t stored_elements_ = 0;
  std::uint64_t layers_computed_ = 0;

  Data& data(const Pattern& p) {
    Data& d = memo_[&p];
    if (!d.initialised) {
      d.initialised = true;
      if (p.kind == Pattern::Kind::Union) {
        auto vars = variables(p);
        d.domain.assign(vars.begin(), vars.end());
      } else if (p.kind == Pattern::Kind::Repeat) {
        auto vars = variables(*p.lhs);
        d.domain.assign(vars.begin(), vars.end());
      }
    }
    return d;
  }

  std::optional<std::size_t> max_nonempty(const Pattern& p, std::size_t l) {
    const Data& d = data(p);
    for (std::size_t i = std::min(l + 1, d.layers.size()); i-- > 0;) {
      if (d.layers[i].size > 0) return i;
    }
    return std::nullopt;
  }

  void charge(std::uint64_t entries, std::uint64_t elements) {
    stored_ += entries;
    stored_elements_ += elements;
    if (stored_ > cfg_.max_answers || stored_elements_ > 64 * cfg_.max_answers) {
      throw ResourceLimitError("evaluation exceeded the answer ceiling of " +
                               std::to_string(cfg_.max_answers));
    }
  }

  void finish_layer(Data& d, std::set<Match>&& matches) {
    Layer out;
    out.by_src.resize(g_.node_count());
    std::uint64_t elements = 0;
    for (auto it = matches.begin(); it != matches.end();) {
      auto node = matches.extract(it++);
      if (!passes(filter_, node.value().path)) continue;
      elements += node.value().path.elements().size();
      ++out.size;
      out.by_src[node.value().path.src()].push_back(std::move(node.value()));
    }
    charge(out.size, elements);
    d.layers.push_back(std::move(out));
    ++layers_computed_;
  }

  void compute_next(const Pattern& p, Data& d) {
    const std::size_t l = d.layers.size();
    std::set<Match> out;
    switch (p.kind) {
      case Pattern::Kind::Node:
        if (l == 0) node_layer(p, out);
        break;
      case Pattern::Kind::Edge:
        if (l == 1) edge_layer(p, out);
        break;
      case Pattern::Kind::Union:
        union_layer(p, d, l, out);
        break;
      case Pattern::Kind::Concat:
        concat_layer(p, l, out);
        break;
      case Pattern::Kind::Cond: {
        const Layer& inner = layer(*p.lhs, l);
        for (const auto& bucket : inner.by_src) {
          for (const auto& m : bucket) {
            if (satisfies(g_, m.mu, *p.condition)) out.insert(m);
          }
        }
        break;
      }
      case Pattern::Kind::Repeat:
        repeat_layer(p, d, l, out);
        break;
    }
    finish_layer(d, std::move(out));
  }

  void node_layer(const Pattern& p, std::set<Match>& out) {
    const auto& desc = p.descriptor;
    for (NodeIndex n = 0; n < g_.node_count(); ++n) {
      if (desc.label && !g_.node_has_label(n, *desc.label)) continue;
      Assignment mu;
      if (desc.variable) mu.emplace(*desc.variable, Value::node(n));
      out.insert({Path(n), std::move(mu)});
    }
  }

  void edge_layer(const Pattern& p, std::set<Match>& out) {
    const auto& desc = p.descriptor;
    auto add = [&](NodeIndex a, EdgeIndex e, NodeIndex b) {
      Assignment mu;
      if (desc.variable) mu.emplace(*desc.variable, Value::edge(e));
      out.insert({Path({a, e, b}), std::move(mu)});
    };
    for (EdgeIndex e = 0; e < g_.edge_count(); ++e) {
      if (desc.label && !g_.edge_has_label(e, *desc.label)) continue;
      NodeIndex s = g_.edge_source(e);
      NodeIndex t = g_.edge_target(e);
      switch (p.direction) {
        case Direction::Forward:
          if (g_.is_directed(e)) add(s, e, t);
          break;
        case Direction::Backward:
          if (g_.is_directed(e)) add(t, e, s);
          break;
        case Direction::Undirected:
          if (!g_.is_directed(e)) {
            add(s, e, t);
            add(t, e, s);  // a duplicate for self-loops, absorbed by the set
          }
          break;
      }
    }
  }

  void union_layer(const Pattern& p, const Data& d, std::size_t l, std::set<Match>& out) {
    for (const Pattern* side : {p.lhs.get(), p.rhs.get()}) {
      const Layer& part = layer(*side, l);
      for (const auto& bucket : part.by_src) {
        for (const auto& m : bucket) {
          Match extended = m;
          for (const auto& x : d.domain) extended.mu.emplace(x, Value::nothing());
          out.insert(std::move(extended));
        }
      }
    }
  }

  void concat_layer(const Pattern& p, std::size_t l, std::set<Match>& out) {
    layer(*p.lhs, l);
    layer(*p.rhs, l);
    const Data& ld = data(*p.lhs);
    const Data& rd = data(*p.rhs);
    for (std::size_t i = 0; i <= l; ++i) {
      const Layer& left = ld.layers[i];
      const Layer& right = rd.layers[l - i];
      if (left.size == 0 || right.size == 0) continue;
      for (const auto& bucket : left.by_src) {
        for (const auto& a : bucket) {
          for (const auto& b : right.by_src[a.path.tgt()]) {
            auto mu = unify(a.mu, b.mu, cfg_.lenient_unify);
            if (!mu) continue;
            out.insert({*concat(a.path, b.path), std::move(*mu)});
          }
        }
      }
    }
  }

  bool count_ok(const Pattern& p, std::uint64_t count) const { return count <= p.max; }

  // Inserts or improves a state; returns the stored key when it changed.
  const StateKey* offer(StateLayer& states, StateKey key, std::uint64_t count) {
    if (!passes(filter_, key.path)) return nullptr;
    auto [it, inserted] = states.emplace(std::move(key), count);
    if (inserted) {
      charge(1, it->first.path.elements().size());
      return &it->first;
    }
    if (count < it->second) {
      it->second = count;
      return &it->first;
    }
    return nullptr;
  }

  void repeat_layer(const Pattern& p, Data& d, std::size_t l, std::set<Match>& out) {
    const Pattern& body = *p.lhs;
    layer(body, l);
    const Data& bd = data(body);
    const bool keep_groups = !d.domain.empty();
    StateLayer current;
    std::deque<const StateKey*> work;

    if (l == 0) {
      for (NodeIndex u = 0; u < g_.node_count(); ++u) {
        StateKey key{Path(u), {}, std::nullopt, false, 0};
        if (auto k = offer(current, std::move(key), 0)) work.push_back(k);
      }
    }

    // Positive-length segments from settled lower layers.
    for (std::size_t k = 1; k <= l; ++k) {
      const Layer& segs = bd.layers[k];
      if (segs.size == 0) continue;
      for (const auto& [key, count] : d.states[l - k]) {
        if (!count_ok(p, count + 1)) continue;
        for (const auto& seg : segs.by_src[key.path.tgt()]) {
          StateKey next;
          next.path = *concat(key.path, seg.path);
          next.absorbed = key.absorbed;
          next.exact_count = key.absorbed ? 0 : count + 1;
          if (keep_groups) {
            next.closed = key.closed;
            if (key.open) next.closed.push_back({Path(key.path.tgt()), *key.open});
            next.closed.push_back(seg);
          }
          if (auto s = offer(current, std::move(next), count + 1)) work.push_back(s);
        }
      }
    }

    // Edgeless segments, within the layer.
    if (cfg_.collect_mode == CollectMode::Grouping && bd.layers[0].size > 0) {
      while (!work.empty()) {
        const StateKey* key = work.front();
        work.pop_front();
        std::uint64_t count = current.at(*key);
        if (!count_ok(p, count + 1)) continue;
        for (const auto& seg : bd.layers[0].by_src[key->path.tgt()]) {
          StateKey next;
          next.path = key->path;
          next.absorbed = true;
          if (keep_groups) {
            next.closed = key->closed;
            if (key->open) {
              auto merged = unify(*key->open, seg.mu, cfg_.lenient_unify);
              if (!merged) continue;
              next.open = std::move(*merged);
            } else {
              next.open = seg.mu;
            }
          }
          // Key may point into `current`; the map never invalidates it.
          if (auto s = offer(current, std::move(next), count + 1)) work.push_back(s);
        }
      }
    }

    for (const auto& [key, count] : current) {
      bool final = key.absorbed ? std::max(count, p.min) <= p.max : p.min <= count;
      if (!final) continue;
      Assignment mu;
      if (keep_groups) {
        std::vector<Match> groups = key.closed;
        if (key.open) groups.push_back({Path(key.path.tgt()), *key.open});
        for (const auto& x : d.domain) {
          std::vector<GroupItem> items;
          items.reserve(groups.size());
          for (const auto& grp : groups) items.push_back({grp.path, grp.mu.at(x)});
          mu.emplace(x, Value::group(std::move(items)));
        }
      }
      out.insert({key.path, std::move(mu)});
    }
    d.states.push_back(std::move(current));
  }
};

struct PathQueryResult {
  std::vector<Match> matches;
  std::uint64_t bound = 0;
  std::uint64_t layers = 0;
};

PathQueryResult run_path_query(const PropertyGraph& g, const Pattern& p, Restrictor r,
                               const EvalConfig& cfg) {
  PathQueryResult result;
  result.bound = cfg.max_len ? *cfg.max_len : default_length_bound(r, g, p, cfg.shortest_bound_cap);
  Evaluator ev(g, cfg, filter_for(r));
  const bool shortest = is_shortest(r);
  // Pairs that can never be satisfied must not keep the loop going.
  std::optional<std::set<std::pair<NodeIndex, NodeIndex>>> reachable;
  if (shortest) reachable = reachable_endpoints(g, p);
  const std::size_t all_pairs = reachable ? reachable->size() : g.node_count() * g.node_count();
  std::set<std::pair<NodeIndex, NodeIndex>> satisfied;
  for (std::uint64_t l = 0; l <= result.bound; ++l) {
    const Layer& layer = ev.layer(p, l);
    std::set<std::pair<NodeIndex, NodeIndex>> fresh;
    for (const auto& bucket : layer.by_src) {
      for (const auto& m : bucket) {
        if (shortest) {
          auto pair = std::make_pair(m.path.src(), m.path.tgt());
          if (satisfied.contains(pair)) continue;
          fresh.insert(pair);
        }
        result.matches.push_back(m);
      }
    }
    satisfied.insert(fresh.begin(), fresh.end());
    if (result.matches.size() > cfg.max_answers) {
      throw ResourceLimitError("answer count exceeded the ceiling of " +
                               std::to_string(cfg.max_answers));
    }
    if (ev.exhausted(p, l)) break;
    if (shortest && satisfied.size() >= all_pairs &&
        (!reachable || std::includes(satisfied.begin(), satisfied.end(), reachable->begin(),
                                     reachable->end())))
      break;
  }
  result.layers = ev.layers_computed();
  std::sort(result.matches.begin(), result.matches.end());
  return result;
}

std::vector<Answer> eval_query_rec(const PropertyGraph& g, const Query& q, const EvalConfig& cfg,
                                   EvalStats& stats) {
  switch (q.kind) {
    case Query::Kind::Restricted:
    case Query::Kind::Bound: {
      auto r = run_path_query(g, *q.pattern, q.restrictor, cfg);
      stats.bound_used = std::max(stats.bound_used, r.bound);
      stats.layers_computed += r.layers;
      std::vector<Answer> out;
      out.reserve(r.matches.size());
      for (auto& m : r.matches) {
        Answer a{{m.path}, std::move(m.mu)};
        if (q.kind == Query::Kind::Bound) a.bindings.emplace(q.path_variable, Value::of_path(m.path));
        out.push_back(std::move(a));
      }
      return out;
    }
    case Query::Kind::Join: {
      auto left = eval_query_rec(g, *q.lhs, cfg, stats);
      auto right = eval_query_rec(g, *q.rhs, cfg, stats);
      std::vector<Answer> out;
      for (const auto& a : left) {
        for (const auto& b : right) {
          auto mu = unify(a.bindings, b.bindings, cfg.lenient_unify);
          if (!mu) continue;
          Answer joined{a.paths, std::move(*mu)};
          joined.paths.insert(joined.paths.end(), b.paths.begin(), b.paths.end());
          out.push_back(std::move(joined));
          if (out.size() > cfg.max_answers) {
            throw ResourceLimitError("answer count exceeded the ceiling of " +
                                     std::to_string(cfg.max_answers));
          }
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
  }
  return {};
}

}  // namespace

std::vector<Match> eval_pattern(const PropertyGraph& g, const Pattern& p, const EvalConfig& cfg,
                                EvalStats* stats) {
  validate_for_mode(p, cfg.collect_mode);
  EvalConfig local = cfg;
  std::uint64_t bound = cfg.max_len.value_or(kUnbounded - 1);
  local.max_len = bound;
  Evaluator ev(g, local, PathFilter::None);
  std::vector<Match> out;
  for (std::uint64_t l = 0; l <= bound; ++l) {
    const Layer& layer = ev.layer(p, l);
    for (const auto& bucket : layer.by_src) out.insert(out.end(), bucket.begin(), bucket.end());
    if (ev.exhausted(p, l)) {
      bound = l;
      break;
    }
  }
  if (stats) {
    stats->bound_used = bound;
    stats->layers_computed = ev.layers_computed();
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Answer> eval_query(const PropertyGraph& g, const Query& q, const EvalConfig& cfg,
                               EvalStats* stats) {
  validate_for_mode(q, cfg.collect_mode);
  EvalStats local;
  auto out = eval_query_rec(g, q, cfg, local);
  if (stats) *stats = local;
  return out;
}

// Literal power: exact segment counts, no minimum-count merging.
std::vector<Match> power(const PropertyGraph& g, const Pattern& p, std::uint64_t n,
                         std::uint64_t max_len, const EvalConfig& cfg) {
  EvalConfig body_cfg = cfg;
  body_cfg.max_len = max_len;
  auto body = eval_pattern(g, p, body_cfg);
  auto vars = variables(p);

  if (n == 0) {
    std::vector<Match> out;
    for (NodeIndex u = 0; u < g.node_count(); ++u) {
      Assignment mu;
      for (const auto& x : vars) mu.emplace(x, Value::group({}));
      out.push_back({Path(u), std::move(mu)});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  struct Prefix {
    Path path;
    std::vector<Match> closed;
    std::optional<Assignment> open;
    auto operator<=>(const Prefix&) const = default;
  };
  std::set<Prefix> prefixes;
  for (NodeIndex u = 0; u < g.node_count(); ++u) prefixes.insert({Path(u), {}, std::nullopt});
  for (std::uint64_t step = 0; step < n; ++step) {
    std::set<Prefix> next;
    for (const auto& pre : prefixes) {
      for (const auto& seg : body) {
        if (seg.path.src() != pre.path.tgt()) continue;
        if (pre.path.len() + seg.path.len() > max_len) continue;
        Prefix q{*concat(pre.path, seg.path), pre.closed, std::nullopt};
        bool edgeless = seg.path.len() == 0;
        if (edgeless && cfg.collect_mode == CollectMode::Dynamic) continue;
        if (edgeless && cfg.collect_mode == CollectMode::Grouping) {
          if (pre.open) {
            auto merged = unify(*pre.open, seg.mu, cfg.lenient_unify);
            if (!merged) continue;
            q.open = std::move(*merged);
          } else {
            q.open = seg.mu;
          }
        } else {
          if (pre.open) q.closed.push_back({Path(pre.path.tgt()), *pre.open});
          q.closed.push_back(seg);
        }
        next.insert(std::move(q));
      }
    }
    prefixes = std::move(next);
  }
  std::set<Match> out;
  for (const auto& pre : prefixes) {
    std::vector<Match> groups = pre.closed;
    if (pre.open) groups.push_back({Path(pre.path.tgt()), *pre.open});
    Assignment mu;
    for (const auto& x : vars) {
      std::vector<GroupItem> items;
      for (const auto& grp : groups) items.push_back({grp.path, grp.mu.at(x)});
      mu.emplace(x, Value::group(std::move(items)));
    }
    out.insert({pre.path, std::move(mu)});
  }
  return {out.begin(), out.end()};
}

// ---- variable-free fast path ----

namespace {

using Relation = std::vector<std::vector<bool>>;

Relation empty_relation(std::size_t n) { return Relation(n, std::vector<bool>(n, false)); }

Relation identity(std::size_t n) {
  Relation r = empty_relation(n);
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  return r;
}

Relation compose(const Relation& a, const Relation& b) {
  const std::size_t n = a.size();
  Relation out = empty_relation(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k][j]) out[i][j] = true;
      }
    }
  }
  return out;
}

Relation unite(Relation a, const Relation& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (b[i][j]) a[i][j] = true;
    }
  }
  return a;
}

Relation raise(Relation base, std::uint64_t e) {
  Relation out = identity(base.size());
  while (e > 0) {
    if (e & 1) out = compose(out, base);
    e >>= 1;
    if (e > 0) base = compose(base, base);
  }
  return out;
}

Relation relation_of(const PropertyGraph& g, const Pattern& pat, const Path& p) {
  const std::size_t n = p.len() + 1;
  Relation r = empty_relation(n);
  switch (pat.kind) {
    case Pattern::Kind::Node:
      for (std::size_t i = 0; i < n; ++i) {
        if (!pat.descriptor.label || g.node_has_label(p.node(i), *pat.descriptor.label)) r[i][i] = true;
      }
      return r;
    case Pattern::Kind::Edge:
      for (std::size_t i = 0; i + 1 < n; ++i) {
        EdgeIndex e = p.edge(i);
        if (pat.descriptor.label && !g.edge_has_label(e, *pat.descriptor.label)) continue;
        NodeIndex a = p.node(i), b = p.node(i + 1);
        NodeIndex s = g.edge_source(e), t = g.edge_target(e);
        bool ok = false;
        switch (pat.direction) {
          case Direction::Forward:
            ok = g.is_directed(e) && s == a && t == b;
            break;
          case Direction::Backward:
            ok = g.is_directed(e) && s == b && t == a;
            break;
          case Direction::Undirected:
            ok = !g.is_directed(e) && ((s == a && t == b) || (s == b && t == a));
            break;
        }
        if (ok) r[i][i + 1] = true;
      }
      return r;
    case Pattern::Kind::Union:
      return unite(relation_of(g, *pat.lhs, p), relation_of(g, *pat.rhs, p));
    case Pattern::Kind::Concat:
      return compose(relation_of(g, *pat.lhs, p), relation_of(g, *pat.rhs, p));
    case Pattern::Kind::Cond:
      throw std::invalid_argument("conditions need variables");
    case Pattern::Kind::Repeat: {
      Relation base = relation_of(g, *pat.lhs, p);
      Relation head = raise(base, pat.min);
      // (I + R)^k stabilises once k reaches the number of positions.
      std::uint64_t extra = pat.max == kUnbounded ? n : std::min<std::uint64_t>(pat.max - pat.min, n);
      return compose(head, raise(unite(identity(n), base), extra));
    }
  }
  return r;
}

}  // namespace

std::set<std::pair<std::size_t, std::size_t>> pairs_no_vars(const PropertyGraph& g,
                                                            const Pattern& pattern,
                                                            const Path& p) {
  if (!variables(pattern).empty()) {
    throw std::invalid_argument("pairs_no_vars requires a variable-free pattern");
  }
  Relation r = relation_of(g, pattern, p);
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[i][j]) out.emplace(i, j);
    }
  }
  return out;
}

}  // namespace gpc
