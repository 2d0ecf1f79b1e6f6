#include <tuple>

#include "gpc/eval.hpp"

namespace gpc {

namespace {

constexpr std::size_t kMaxMatrixNodes = 2048;

struct TooLarge {};

// Bit-row boolean matrix.
class Matrix {
 public:
  explicit Matrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1;
  }

  Matrix operator*(const Matrix& o) const {
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t k = 0; k < n_; ++k) {
        if (!get(i, k)) continue;
        for (std::size_t w = 0; w < words_; ++w) out.bits_[i * words_ + w] |= o.bits_[k * words_ + w];
      }
    }
    return out;
  }

  Matrix operator|(const Matrix& o) const {
    Matrix out = *this;
    for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w] |= o.bits_[w];
    return out;
  }

  bool operator==(const Matrix&) const = default;

  Matrix power(std::uint64_t e) const {
    Matrix result = identity(n_), base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  // Reflexive-transitive closure.
  Matrix star() const {
    Matrix m = identity(n_) | *this;
    while (true) {
      Matrix next = m * m;
      if (next == m) return m;
      m = std::move(next);
    }
  }

 private:
  std::size_t n_, words_;
  std::vector<std::uint64_t> bits_;
};

using Tuple = std::tuple<NodeIndex, NodeIndex, Assignment>;
using Relation = std::set<Tuple>;

class Reach {
 public:
  Reach(const PropertyGraph& g, std::size_t limit) : g_(g), limit_(limit) {}

  Relation of(const Pattern& p) {
    Relation out;
    switch (p.kind) {
      case Pattern::Kind::Node:
        for (NodeIndex u = 0; u < g_.node_count(); ++u) {
          if (p.descriptor.label && !g_.node_has_label(u, *p.descriptor.label)) continue;
          Assignment mu;
          if (p.descriptor.variable) mu.emplace(*p.descriptor.variable, Value::node(u));
          add(out, {u, u, std::move(mu)});
        }
        return out;
      case Pattern::Kind::Edge:
        for (EdgeIndex e = 0; e < g_.edge_count(); ++e) {
          if (p.descriptor.label && !g_.edge_has_label(e, *p.descriptor.label)) continue;
          Assignment mu;
          if (p.descriptor.variable) mu.emplace(*p.descriptor.variable, Value::edge(e));
          NodeIndex s = g_.edge_source(e), t = g_.edge_target(e);
          if (g_.is_directed(e)) {
            if (p.direction == Direction::Forward) add(out, {s, t, mu});
            if (p.direction == Direction::Backward) add(out, {t, s, mu});
          } else if (p.direction == Direction::Undirected) {
            add(out, {s, t, mu});
            add(out, {t, s, mu});
          }
        }
        return out;
      case Pattern::Kind::Union: {
        const Schema schema = infer_schema(p);
        for (const Pattern* side : {p.lhs.get(), p.rhs.get()}) {
          for (const auto& [s, t, mu] : of(*side)) add(out, {s, t, singletons(mu, schema)});
        }
        return out;
      }
      case Pattern::Kind::Concat: {
        Relation left = of(*p.lhs), right = of(*p.rhs);
        std::map<NodeIndex, std::vector<const Tuple*>> by_src;
        for (const auto& r : right) by_src[std::get<0>(r)].push_back(&r);
        for (const auto& [s, m, mu] : left) {
          auto it = by_src.find(m);
          if (it == by_src.end()) continue;
          for (const Tuple* r : it->second) {
            if (auto joined = unify(mu, std::get<2>(*r))) add(out, {s, std::get<1>(*r), std::move(*joined)});
          }
        }
        return out;
      }
      case Pattern::Kind::Cond:
        for (const auto& t : of(*p.lhs)) {
          if (satisfies(g_, std::get<2>(t), *p.condition)) add(out, t);
        }
        return out;
      case Pattern::Kind::Repeat: {
        const std::size_t n = g_.node_count();
        Matrix body(n);
        for (const auto& [s, t, mu] : of(*p.lhs)) body.set(s, t);
        Matrix m = body.power(p.min);
        if (p.max == kUnbounded) {
          m = m * body.star();
        } else if (p.max > p.min) {
          m = m * (Matrix::identity(n) | body).power(p.max - p.min);
        }
        for (NodeIndex s = 0; s < n; ++s) {
          for (NodeIndex t = 0; t < n; ++t) {
            if (m.get(s, t)) add(out, {s, t, {}});
          }
        }
        return out;
      }
    }
    return out;
  }

 private:
  const PropertyGraph& g_;
  std::size_t limit_;

  void add(Relation& r, Tuple t) {
    r.insert(std::move(t));
    if (r.size() > limit_) throw TooLarge{};
  }

  static Assignment singletons(const Assignment& mu, const Schema& schema) {
    Assignment out;
    for (const auto& [x, v] : mu) {
      auto it = schema.find(x);
      if (it != schema.end() && it->second.is_singleton()) out.emplace(x, v);
    }
    return out;
  }
};

}  // namespace

std::optional<std::set<std::pair<NodeIndex, NodeIndex>>> reachable_endpoints(
    const PropertyGraph& g, const Pattern& p, std::size_t limit) {
  if (g.node_count() > kMaxMatrixNodes) return std::nullopt;
  try {
    std::set<std::pair<NodeIndex, NodeIndex>> out;
    for (const auto& [s, t, mu] : Reach(g, limit).of(p)) out.emplace(s, t);
    return out;
  } catch (const TooLarge&) {
    return std::nullopt;
  }
}

}  // namespace gpc
