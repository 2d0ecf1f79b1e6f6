// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "gen.hpp"
#include "gpc/eval.hpp"
#include "gpc/gpcplus.hpp"
#include "gpc/oracle.hpp"
#include "gpc/serialize.hpp"
#include "gpc/typing.hpp"

using namespace gpc;
namespace gt = gpc::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt_s(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

std::set<Answer> as_set(const std::vector<Answer>& v) { return {v.begin(), v.end()}; }

// Criteria 1 and 2 share one run.
struct DifferentialRun {
  int compared = 0, agreed = 0, skipped = 0, answers = 0, conforming = 0;
  std::string first_mismatch;
  double elapsed = 0;
};

DifferentialRun differential() {
  DifferentialRun run;
  gt::Rng rng(20240601);
  auto start = Clock::now();
  while (run.compared < 500) {
    auto g = gt::random_graph(rng);
    auto q = gt::random_typed_query(rng);
    const std::uint64_t L = 1 + rng() % 4;
    EvalConfig cfg;
    cfg.collect_mode = CollectMode::Grouping;
    cfg.max_len = L;
    oracle::Options opt;
    opt.max_len = L;
    std::vector<Answer> expected;
    try {
      expected = oracle::brute_force_query(g, *q, opt, oracle::Budget{4, 200000});
    } catch (const oracle::BudgetExceeded&) {
      ++run.skipped;
      continue;
    }
    auto got = eval_query(g, *q, cfg);
    ++run.compared;
    if (as_set(got) == as_set(expected)) {
      ++run.agreed;
    } else if (run.first_mismatch.empty()) {
      run.first_mismatch = render(*q) + " (L=" + std::to_string(L) + ")";
    }
    Schema schema = infer_schema(*q);
    for (const auto& a : got) {
      ++run.answers;
      bool ok = conforms(a.bindings, schema);
      for (const auto& p : a.paths) ok = ok && path_is_valid(g, p);
      if (ok) ++run.conforming;
    }
  }
  run.elapsed = seconds_since(start);
  return run;
}

Outcome criterion1(const DifferentialRun& r) {
  Outcome o;
  o.pass = r.agreed == r.compared && r.compared == 500 && r.elapsed < 60;
  o.detail = std::to_string(r.agreed) + "/" + std::to_string(r.compared) +
             " instances agree with the oracle, " + std::to_string(r.skipped) +
             " over oracle budget, " + fmt_s(r.elapsed);
  if (!r.first_mismatch.empty()) o.detail += "; first mismatch: " + r.first_mismatch;
  return o;
}

Outcome criterion2(const DifferentialRun& r) {
  Outcome o;
  o.pass = r.compared == 500 && r.conforming == r.answers;
  o.detail = std::to_string(r.compared) + " instances terminated, " + std::to_string(r.conforming) +
             "/" + std::to_string(r.answers) + " answers conform and have valid paths";
  return o;
}

bool nested_maybe(const Type& t) {
  if (!t.inner) return false;
  if (t.kind == Type::Kind::Maybe && t.inner->kind == Type::Kind::Maybe) return true;
  return nested_maybe(*t.inner);
}

std::optional<Schema> try_schema(const Pattern& p) {
  try {
    return infer_schema(p);
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

std::optional<Schema> try_schema(const Query& q) {
  try {
    return infer_schema(q);
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

Outcome criterion3() {
  gt::Rng rng(7);
  gt::PatternShape shape;
  shape.max_depth = 2;
  int checked = 0, bad = 0, typed = 0;
  std::string first;
  auto flag = [&](const std::string& what) {
    ++bad;
    if (first.empty()) first = what;
  };
  auto check_schema = [&](const std::optional<Schema>& s, const std::set<std::string>& vars,
                          const std::string& where) {
    if (!s) return;
    ++typed;
    std::set<std::string> keys;
    for (const auto& [x, t] : *s) {
      keys.insert(x);
      if (nested_maybe(t)) flag("Maybe(Maybe) in " + where);
    }
    if (keys != vars) flag("schema domain differs from var() in " + where);
  };
  for (int i = 0; i < 1000; ++i, ++checked) {
    auto a = gt::random_pattern(rng, shape);
    auto b = gt::random_pattern(rng, shape);
    auto c = gt::random_pattern(rng, shape);
    switch (i % 3) {
      case 0:
      case 1: {
        auto op = i % 3 == 0 ? Pattern::alt : Pattern::concat;
        auto left = op(op(a, b), c), right = op(a, op(b, c));
        auto s1 = try_schema(*left), s2 = try_schema(*right);
        if (s1 != s2) flag("reassociation: " + render(*left));
        if (try_schema(*op(a, b)) != try_schema(*op(b, a))) flag("commutation: " + render(*op(a, b)));
        if (s1 != try_schema(*left)) flag("non-deterministic schema: " + render(*left));
        check_schema(s1, variables(*left), render(*left));
        check_schema(try_schema(*op(a, b)), variables(*op(a, b)), render(*op(a, b)));
        break;
      }
      default: {
        auto qa = Query::restricted(Restrictor::Shortest, a);
        auto qb = Query::bound("p", Restrictor::Trail, b);
        auto qc = Query::restricted(Restrictor::Simple, c);
        auto left = Query::join(Query::join(qa, qb), qc), right = Query::join(qa, Query::join(qb, qc));
        auto s1 = try_schema(*left), s2 = try_schema(*right);
        if (s1 != s2) flag("join reassociation: " + render(*left));
        if (try_schema(*Query::join(qa, qb)) != try_schema(*Query::join(qb, qa))) {
          flag("join commutation: " + render(*Query::join(qa, qb)));
        }
        if (s1) {
          std::set<std::string> vars = variables(*a);
          for (const auto& x : variables(*b)) vars.insert(x);
          for (const auto& x : variables(*c)) vars.insert(x);
          vars.insert("p");
          check_schema(s1, vars, render(*left));
        }
        break;
      }
    }
  }
  Outcome o;
  o.pass = bad == 0 && checked == 1000;
  o.detail = std::to_string(checked) + " expression triples, " + std::to_string(typed) +
             " well-typed schemas inspected, " + std::to_string(bad) + " violations";
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

Outcome criterion4() {
  const std::vector<std::size_t> lengths{1, 2, 0, 0, 0, 3, 0, 2, 0, 0};
  auto bounds = refactor(lengths);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    groups.emplace_back(lengths.begin() + bounds[k], lengths.begin() + bounds[k + 1]);
  }
  const std::vector<std::vector<std::size_t>> expected{{1}, {2}, {0, 0, 0}, {3}, {0}, {2}, {0, 0}};
  Outcome o;
  o.pass = groups == expected;
  o.detail = std::to_string(groups.size()) + " groups";
  return o;
}

Outcome criterion5() {
  gt::Rng rng(99);
  gt::PatternShape shape;
  shape.edgeless_repeats = false;
  int instances = 0, agreed = 0;
  std::string first;
  while (instances < 200) {
    auto g = gt::random_graph(rng);
    auto q = gt::random_typed_query(rng, shape);
    try {
      validate_for_mode(*q, CollectMode::Syntactic);
    } catch (const TypeError&) {
      continue;
    }
    ++instances;
    EvalConfig cfg;
    cfg.max_len = 1 + rng() % 4;
    std::set<Answer> results[3];
    const CollectMode modes[3] = {CollectMode::Syntactic, CollectMode::Dynamic, CollectMode::Grouping};
    for (int m = 0; m < 3; ++m) {
      cfg.collect_mode = modes[m];
      results[m] = as_set(eval_query(g, *q, cfg));
    }
    if (results[0] == results[1] && results[1] == results[2]) {
      ++agreed;
    } else if (first.empty()) {
      first = render(*q);
    }
  }
  Outcome o;
  o.pass = agreed == instances;
  o.detail = std::to_string(agreed) + "/" + std::to_string(instances) + " instances agree across modes";
  if (!first.empty()) o.detail += "; first disagreement: " + first;
  return o;
}

Outcome criterion6() {
  auto g = gt::g_exp();
  auto q = parse_query("x = SHORTEST () ->{3..3} ()");
  auto start = Clock::now();
  auto answers = eval_query(g, *q, EvalConfig{});
  double t = seconds_since(start);
  std::map<std::pair<NodeIndex, NodeIndex>, int> per_pair;
  for (const auto& a : answers) ++per_pair[{a.paths[0].src(), a.paths[0].tgt()}];
  bool eight_each = !per_pair.empty();
  for (const auto& [pair, n] : per_pair) eight_each = eight_each && n == 8;
  oracle::Options opt;
  opt.max_len = 3;
  auto expected = oracle::brute_force_query(g, *q, opt);
  Outcome o;
  o.pass = eight_each && per_pair.size() == 2 && answers.size() == 16 &&
           as_set(answers) == as_set(expected) && t < 5;
  o.detail = std::to_string(answers.size()) + " answers over " + std::to_string(per_pair.size()) +
             " ordered pairs, oracle " + std::to_string(expected.size()) + ", " + fmt_s(t);
  return o;
}

Outcome criterion7() {
  auto g = gt::g_intro();
  EvalConfig cfg;
  auto shortest = eval_query(g, *parse_query("SHORTEST (:A) -[x]->{0..} (:B)"), cfg);
  auto trail = eval_query(g, *parse_query("TRAIL (:A) -[x]->{0..} (:B)"), cfg);
  auto direct = *resolve_path(g, {"nA", "e2", "nB"});
  auto two_step = *resolve_path(g, {"nA", "e1", "nC", "e3", "nB"});
  Value x_direct = Value::group({GroupItem{direct, Value::edge(*g.find_edge("e2"))}});
  bool ok_shortest = shortest.size() == 1 && shortest[0].paths == std::vector<Path>{direct} &&
                     shortest[0].bindings.at("x") == x_direct;
  std::set<Path> trail_paths;
  for (const auto& a : trail) trail_paths.insert(a.paths[0]);
  bool ok_trail = trail.size() == 2 && trail_paths == std::set<Path>{direct, two_step};
  oracle::Options opt;
  opt.max_len = g.edge_count();
  bool ok_oracle =
      as_set(shortest) == as_set(oracle::brute_force_query(g, *parse_query("SHORTEST (:A) -[x]->{0..} (:B)"), opt)) &&
      as_set(trail) == as_set(oracle::brute_force_query(g, *parse_query("TRAIL (:A) -[x]->{0..} (:B)"), opt));
  Outcome o;
  o.pass = ok_shortest && ok_trail && ok_oracle;
  o.detail = "SHORTEST " + std::to_string(shortest.size()) + " answer(s), TRAIL " +
             std::to_string(trail.size()) + " answer(s), oracle " + (ok_oracle ? "agrees" : "disagrees");
  return o;
}

Outcome criterion8() {
  auto g = gt::graph_from_json(R"({"nodes":[{"id":"u"},{"id":"v"}],
    "directed_edges":[{"id":"uv","src":"u","tgt":"v"},{"id":"vu","src":"v","tgt":"u"}]})");
  auto pi = parse_pattern("(x)");
  EvalConfig cfg;
  cfg.collect_mode = CollectMode::Grouping;
  // M: assignments of pi over each edgeless path.
  std::map<NodeIndex, std::size_t> per_node;
  cfg.max_len = 0;
  for (const auto& m : eval_pattern(g, *pi, cfg)) ++per_node[m.path.src()];
  int checks = 0, failures = 0, nonempty = 0;
  for (const auto& p : oracle::enumerate_paths(g, 2)) {
    const std::uint64_t L = p.len();
    std::size_t M = 0;
    for (std::size_t i = 0; i <= L; ++i) M = std::max(M, per_node[p.node(i)]);
    const std::uint64_t B = (L + 1) * (M + 1);
    auto at_p = [&](std::uint64_t n) {
      std::set<Assignment> out;
      for (const auto& m : power(g, *pi, n, L, cfg)) {
        if (m.path == p) out.insert(m.mu);
      }
      return out;
    };
    for (std::uint64_t n = B + 1; n <= B + 3; ++n) {
      auto now = at_p(n), before = at_p(n - 1);
      ++checks;
      if (!now.empty()) ++nonempty;
      if (!std::includes(before.begin(), before.end(), now.begin(), now.end())) ++failures;
    }
  }
  Outcome o;
  o.pass = failures == 0 && checks > 0 && nonempty > 0;
  o.detail = std::to_string(checks - failures) + "/" + std::to_string(checks) +
             " (path, n) checks hold, " + std::to_string(nonempty) + " with non-empty powers";
  return o;
}

std::set<std::vector<Value>> tuples(const PropertyGraph& g, const RuleSet& rs) {
  auto got = eval_ruleset(g, rs, EvalConfig{});
  return {got.begin(), got.end()};
}

Outcome criterion9() {
  gt::Rng rng(4242);
  auto start = Clock::now();
  int ok2 = 0, okc = 0, okn = 0;
  std::string first;
  auto note = [&](const std::string& s) {
    if (first.empty()) first = s;
  };
  auto pair_set = [](const oracle::NodePairs& pairs) {
    std::set<std::vector<Value>> out;
    for (auto [s, t] : pairs) out.insert({Value::node(s), Value::node(t)});
    return out;
  };
  for (int i = 0; i < 30; ++i) {
    auto g = gt::random_labeled_digraph(rng, 4, 6);
    auto r = gt::random_regex(rng, 3);
    RuleSet rs;
    rs.rules.push_back({{"x", "y"}, Query::restricted(Restrictor::Shortest, translate_2rpq(*r))});
    if (tuples(g, rs) == pair_set(oracle::product_2rpq(g, *r))) {
      ++ok2;
    } else {
      note("2RPQ " + render(*r));
    }
  }
  const std::vector<std::string> vars{"x", "y", "z"};
  for (int i = 0; i < 30; ++i) {
    auto g = gt::random_labeled_digraph(rng, 4, 6);
    C2rpq q;
    const std::size_t atoms = 1 + rng() % 3;
    std::set<std::string> used;
    for (std::size_t k = 0; k < atoms; ++k) {
      C2rpqAtom atom{vars[rng() % 3], gt::random_regex(rng, 2), vars[rng() % 3]};
      used.insert(atom.source);
      used.insert(atom.target);
      q.atoms.push_back(atom);
    }
    for (const auto& x : used) {
      if (rng() % 2 == 0) q.head.push_back(x);
    }
    if (q.head.empty()) q.head.push_back(*used.begin());
    // Oracle: every assignment of the atom variables to nodes.
    std::vector<oracle::NodePairs> rel;
    for (const auto& a : q.atoms) rel.push_back(oracle::product_2rpq(g, *a.regex));
    std::vector<std::string> vs(used.begin(), used.end());
    std::set<std::vector<Value>> expected;
    std::map<std::string, NodeIndex> sigma;
    std::function<void(std::size_t)> assign = [&](std::size_t k) {
      if (k == vs.size()) {
        for (std::size_t j = 0; j < q.atoms.size(); ++j) {
          if (!rel[j].contains({sigma[q.atoms[j].source], sigma[q.atoms[j].target]})) return;
        }
        std::vector<Value> t;
        for (const auto& x : q.head) t.push_back(Value::node(sigma[x]));
        expected.insert(t);
        return;
      }
      for (NodeIndex u = 0; u < g.node_count(); ++u) {
        sigma[vs[k]] = u;
        assign(k + 1);
      }
    };
    assign(0);
    if (tuples(g, translate_c2rpq(q)) == expected) {
      ++okc;
    } else {
      note("C2RPQ " + render(q));
    }
  }
  for (int i = 0; i < 30; ++i) {
    auto g = gt::random_labeled_digraph(rng, 4, 6);
    auto e = gt::random_nre(rng, 3);
    if (tuples(g, translate_nre(*e)) == pair_set(oracle::recursive_nre(g, *e))) {
      ++okn;
    } else {
      note("NRE " + render(*e));
    }
  }
  double t = seconds_since(start);
  Outcome o;
  o.pass = ok2 == 30 && okc == 30 && okn == 30 && t < 120;
  o.detail = "2RPQ " + std::to_string(ok2) + "/30, C2RPQ " + std::to_string(okc) + "/30, NRE " +
             std::to_string(okn) + "/30, " + fmt_s(t);
  if (!first.empty()) o.detail += "; first mismatch: " + first;
  return o;
}

Outcome criterion10() {
  auto tiny = gt::g_tiny();
  auto loop = eval_pattern(tiny, *parse_pattern("-[z]-"), EvalConfig{});
  bool ok_loop = loop.size() == 1 && loop[0].path == *resolve_path(tiny, {"n2", "u1", "n2"}) &&
                 loop[0].mu.at("z") == Value::edge(*tiny.find_edge("u1"));
  auto g = gt::graph_from_json(R"({"nodes":[{"id":"n1"},{"id":"n2"}],
    "undirected_edges":[{"id":"u","endpoints":["n1","n2"]}]})");
  auto both = eval_pattern(g, *parse_pattern("-[z]-"), EvalConfig{});
  std::set<Path> paths;
  for (const auto& m : both) paths.insert(m.path);
  bool ok_edge = both.size() == 2 && paths == std::set<Path>{*resolve_path(g, {"n1", "u", "n2"}),
                                                              *resolve_path(g, {"n2", "u", "n1"})};
  Outcome o;
  o.pass = ok_loop && ok_edge;
  o.detail = "self-loop " + std::to_string(loop.size()) + " answer(s), non-loop " +
             std::to_string(both.size()) + " answer(s)";
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int n, const char* name, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
  };
  DifferentialRun diff;
  bool diff_ok = true;
  std::string diff_error;
  try {
    diff = differential();
  } catch (const std::exception& e) {
    diff_ok = false;
    diff_error = e.what();
  }
  auto with_diff = [&](Outcome (*f)(const DifferentialRun&)) {
    return [&, f]() {
      if (!diff_ok) return Outcome{false, "exception: " + diff_error};
      return f(diff);
    };
  };
  report(1, "differential equivalence with the oracle", with_diff(criterion1));
  report(2, "finiteness and schema conformance", with_diff(criterion2));
  report(3, "type-system properties", criterion3);
  report(4, "refactorization", criterion4);
  report(5, "collect-mode agreement", criterion5);
  report(6, "exponential lower-bound fixture", criterion6);
  report(7, "shortest vs trail on the intro graph", criterion7);
  report(8, "repetition stabilization", criterion8);
  report(9, "expressivity translators", criterion9);
  report(10, "undirected self-loop", criterion10);
  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
