#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <unordered_map>

#include "wgcl/operational.hpp"

namespace wgcl {

namespace {

struct NodeKey {
  ProgramPtr program;
  State state;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    return (k.program ? k.program->hash : 0) * 31 + k.state.hash();
  }
};

struct NodeKeyEq {
  bool operator()(const NodeKey& a, const NodeKey& b) const {
    return a.state == b.state && equal(a.program, b.program);
  }
};

// Tarjan's algorithm without recursion; returns the component of each node.
std::vector<std::size_t> components(const QuotientGraph& g,
                                    std::size_t& count) {
  const std::size_t n = g.nodes.size();
  const std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> work;
  std::size_t next_index = 0;
  count = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    work.push_back({root, 0});
    while (!work.empty()) {
      auto& [v, i] = work.back();
      if (i == 0) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (i < g.edges[v].size()) {
        std::size_t w = g.edges[v][i++].target;
        if (index[w] == unset) {
          work.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        for (;;) {
          std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
          if (w == v) break;
        }
        ++count;
      }
      std::size_t done = v;
      work.pop_back();
      if (!work.empty()) {
        std::size_t parent = work.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

// Components that contain a cycle.
std::vector<bool> cyclic_components(const QuotientGraph& g,
                                    const std::vector<std::size_t>& comp,
                                    std::size_t count) {
  std::vector<std::size_t> size(count, 0);
  for (auto c : comp) ++size[c];
  std::vector<bool> cyclic(count, false);
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    if (size[comp[v]] > 1) cyclic[comp[v]] = true;
    for (const auto& e : g.edges[v])
      if (e.target == v) cyclic[comp[v]] = true;
  }
  return cyclic;
}

ModuleValue tropical_divergence(const QuotientGraph& g) {
  // Infinite paths of finite weight end in a cycle of zero-weight edges; the
  // answer is the cheapest way to reach one.
  QuotientGraph zero_graph;
  zero_graph.nodes = g.nodes;
  zero_graph.edges.resize(g.nodes.size());
  for (std::size_t v = 0; v < g.nodes.size(); ++v)
    for (const auto& e : g.edges[v])
      if (e.weight == Weight(ExtNat(0))) zero_graph.edges[v].push_back(e);
  std::size_t count = 0;
  auto comp = components(zero_graph, count);
  auto cyclic = cyclic_components(zero_graph, comp, count);

  const auto inf = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> dist(g.nodes.size(), inf);
  using Entry = std::pair<std::uint64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[0] = 0;
  queue.push({0, 0});
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d != dist[v]) continue;
    if (cyclic[comp[v]]) return ExtNat(d);
    for (const auto& e : g.edges[v]) {
      const auto& w = *e.weight.get_if<ExtNat>();
      std::uint64_t nd;
      if (__builtin_add_overflow(d, w.value(), &nd))
        throw AlgebraError("tropical path weight overflow");
      if (nd < dist[e.target]) {
        dist[e.target] = nd;
        queue.push({nd, e.target});
      }
    }
  }
  return ExtNat::infinity();
}

ModuleValue omega_divergence(const QuotientGraph& g, const Algebra& alg,
                             std::size_t budget) {
  const std::size_t n = g.nodes.size();
  std::size_t count = 0;
  auto comp = components(g, count);
  auto cyclic = cyclic_components(g, comp, count);

  // Nodes from which an infinite path starts.
  std::vector<std::vector<std::size_t>> reverse(n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& e : g.edges[v]) reverse[e.target].push_back(v);
  std::vector<bool> live(n, false);
  std::vector<std::size_t> todo;
  for (std::size_t v = 0; v < n; ++v)
    if (cyclic[comp[v]]) {
      live[v] = true;
      todo.push_back(v);
    }
  while (!todo.empty()) {
    std::size_t v = todo.back();
    todo.pop_back();
    for (auto u : reverse[v])
      if (!live[u]) {
        live[u] = true;
        todo.push_back(u);
      }
  }

  // A cyclic component either consists of ε-edges only (any continuation
  // keeps the word reached so far: a cylinder) or is a single cycle that
  // cannot be left towards another infinite path (a lasso).
  enum class Shape { cylinder, cycle };
  std::vector<Shape> shape(count, Shape::cycle);
  std::vector<std::optional<QuotientGraph::Edge>> successor(n);
  for (std::size_t c = 0; c < count; ++c) {
    if (!cyclic[c]) continue;
    bool all_empty = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (comp[v] != c) continue;
      for (const auto& e : g.edges[v])
        if (comp[e.target] == c && !e.weight.get_if<Word>()->empty())
          all_empty = false;
    }
    if (all_empty) {
      shape[c] = Shape::cylinder;
      continue;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (comp[v] != c) continue;
      std::set<std::pair<std::size_t, Word>> internal;
      for (const auto& e : g.edges[v]) {
        if (comp[e.target] == c) {
          internal.insert({e.target, *e.weight.get_if<Word>()});
        } else if (live[e.target]) {
          throw Error("infinite paths leave a cycle towards other infinite "
                      "paths; their words are not a finite set of lassos");
        }
      }
      if (internal.size() != 1)
        throw Error("infinite paths branch inside a cycle; their words are "
                    "not a finite set of lassos");
      successor[v] = QuotientGraph::Edge{internal.begin()->first,
                                         internal.begin()->second};
    }
  }

  OmegaLanguage::Words cylinders;
  OmegaLanguage::Lassos lassos;
  std::set<std::pair<std::size_t, Word>> seen;
  std::vector<std::pair<std::size_t, Word>> stack;
  if (live[0]) stack.push_back({0, Word{}});
  while (!stack.empty()) {
    auto [v, prefix] = stack.back();
    stack.pop_back();
    if (!seen.insert({v, prefix}).second) continue;
    if (seen.size() > budget)
      throw BudgetExceeded("too many prefixes of infinite paths");
    if (cyclic[comp[v]]) {
      if (shape[comp[v]] == Shape::cylinder) {
        cylinders.insert(prefix);
      } else {
        Word period;
        std::size_t u = v;
        do {
          period += *successor[u]->weight.get_if<Word>();
          u = successor[u]->target;
        } while (u != v);
        lassos.insert(Lasso{prefix, period});
      }
      continue;
    }
    for (const auto& e : g.edges[v])
      if (live[e.target])
        stack.push_back({e.target, prefix + *e.weight.get_if<Word>()});
  }
  return OmegaLanguage(alg.alphabet(), {}, std::move(lassos),
                       std::move(cylinders));
}

}  // namespace

QuotientGraph QuotientGraph::build(const ProgramPtr& program,
                                   const State& state, const Algebra& alg,
                                   std::size_t budget, bool drop_annihilating) {
  return build(std::vector<Node>{{program, state}}, alg, budget,
               drop_annihilating);
}

QuotientGraph QuotientGraph::build(const std::vector<Node>& roots,
                                   const Algebra& alg, std::size_t budget,
                                   bool drop_annihilating) {
  QuotientGraph g;
  std::unordered_map<NodeKey, std::size_t, NodeKeyHash, NodeKeyEq> index;
  auto intern = [&](const ProgramPtr& p, const State& s) {
    auto [it, fresh] = index.try_emplace(NodeKey{p, s}, g.nodes.size());
    if (fresh) {
      if (g.nodes.size() >= budget)
        throw BudgetExceeded("more than " + std::to_string(budget) +
                             " reachable (program, state) pairs");
      g.nodes.push_back({p, s});
      g.edges.emplace_back();
    }
    return it->second;
  };
  for (const auto& r : roots) intern(r.program, r.state);
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    if (!g.nodes[v].program) continue;
    // Copy: interning may reallocate the node vector.
    const Node node = g.nodes[v];
    for (auto& s : step(node.program, node.state, alg)) {
      if (drop_annihilating && alg.annihilates(s.weight)) continue;
      std::size_t target = intern(s.next, s.state);
      g.edges[v].push_back({target, std::move(s.weight)});
    }
  }
  return g;
}

ModuleValue diverging_weights(const ProgramPtr& program, const State& state,
                              const Algebra& alg, std::size_t budget) {
  const ModuleValue top = alg.top();
  auto g = QuotientGraph::build(program, state, alg, budget, true);
  switch (alg.kind()) {
    case InstanceKind::tropical:
      return tropical_divergence(g);
    case InstanceKind::omega_lang:
      return omega_divergence(g, alg, budget);
    default: {
      // Every infinite path carries a weight that does not annihilate, and
      // a ⊗ ⊤ = ⊤ for such weights in these instances.
      std::size_t count = 0;
      auto comp = components(g, count);
      auto cyclic = cyclic_components(g, comp, count);
      for (std::size_t v = 0; v < g.nodes.size(); ++v)
        if (cyclic[comp[v]]) return top;
      return alg.mod_zero();
    }
  }
}

UctResult uct_check(const ProgramPtr& program, const State& state,
                    const Algebra& alg, std::size_t bound, std::size_t budget) {
  UctResult result;
  QuotientGraph g;
  try {
    g = QuotientGraph::build(program, state, alg, budget, false);
  } catch (const BudgetExceeded& e) {
    result.reason = e.what();
    return result;
  }
  const std::size_t n = g.nodes.size();
  enum Color : char { white, grey, black };
  std::vector<Color> color(n, white);
  std::vector<std::size_t> longest(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> work{{0, 0}};
  color[0] = grey;
  while (!work.empty()) {
    auto& [v, i] = work.back();
    if (i < g.edges[v].size()) {
      std::size_t w = g.edges[v][i++].target;
      if (color[w] == grey) {
        result.verdict = UctResult::Verdict::refuted;
        std::size_t k = 0;
        while (work[k].first != w) result.stem.push_back(g.nodes[work[k++].first]);
        for (; k < work.size(); ++k) result.cycle.push_back(g.nodes[work[k].first]);
        result.reason = "a (program, state) pair repeats along a path";
        return result;
      }
      if (color[w] == white) {
        color[w] = grey;
        work.push_back({w, 0});
      }
      continue;
    }
    for (const auto& e : g.edges[v])
      longest[v] = std::max(longest[v], longest[e.target] + 1);
    color[v] = black;
    work.pop_back();
  }
  result.max_length = longest[0];
  if (longest[0] <= bound) {
    result.verdict = UctResult::Verdict::certain;
  } else {
    result.reason = "paths of length " + std::to_string(longest[0]) +
                    " exceed the bound " + std::to_string(bound);
  }
  return result;
}

}  // namespace wgcl
