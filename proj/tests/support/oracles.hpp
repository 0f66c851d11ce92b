#pragma once

// Brute-force reference implementations and random generators for tests.
// Everything here is deliberately naive: direct enumeration over subsets,
// permutations and simple paths, exact rational arithmetic throughout.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "eppa/graph.hpp"
#include "eppa/label.hpp"

namespace oracle {

using eppa::EdgeLabelledGraph;
using eppa::IndexMap;
using eppa::kUnmapped;
using eppa::Label;
using eppa::VertexIndex;

inline EdgeLabelledGraph graph(std::vector<std::string> names,
                               std::vector<std::tuple<std::string, std::string, std::string>> edges) {
  std::vector<eppa::Edge> es;
  for (auto& [u, v, l] : edges) es.push_back({u, v, eppa::parse_label(l)});
  return EdgeLabelledGraph::from_edges(std::move(names), es);
}

inline EdgeLabelledGraph triangle(const std::string& xy, const std::string& yz,
                                  const std::string& xz) {
  return graph({"x", "y", "z"}, {{"x", "y", xy}, {"y", "z", yz}, {"x", "z", xz}});
}

inline std::vector<std::string> vertex_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  return names;
}

using Matrix = std::vector<std::vector<std::optional<Label>>>;

inline Matrix matrix(const EdgeLabelledGraph& g) {
  Matrix m(g.size(), std::vector<std::optional<Label>>(g.size()));
  for (const auto& e : g.edges()) m[e.u][e.v] = m[e.v][e.u] = e.label;
  return m;
}

// Floyd-Warshall over exact rationals.
inline Matrix all_pairs_shortest(const EdgeLabelledGraph& g) {
  auto d = matrix(g);
  const std::size_t n = g.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !d[i][k] || !d[k][j]) continue;
        const Label via = *d[i][k] + *d[k][j];
        if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
      }
  return d;
}

inline bool is_metric(const EdgeLabelledGraph& g) {
  const auto d = matrix(g);
  const std::size_t n = g.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && !d[x][y]) return false;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (z != x && z != y && *d[x][y] > *d[x][z] + *d[z][y]) return false;
    }
  return true;
}

inline bool connected(const EdgeLabelledGraph& g) {
  if (g.size() == 0) return false;
  std::vector<char> seen(g.size(), 0);
  std::vector<VertexIndex> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (const auto& nb : g.neighbors(v))
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        stack.push_back(nb.vertex);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
}

inline bool preserves(const Matrix& d, const IndexMap& f) {
  for (std::size_t u = 0; u < f.size(); ++u)
    for (std::size_t v = u + 1; v < f.size(); ++v) {
      if (f[u] == kUnmapped || f[v] == kUnmapped) continue;
      if (d[u][v] != d[f[u]][f[v]]) return false;
    }
  return true;
}

// Every automorphism, as image vectors in lexicographic order.
inline std::vector<IndexMap> automorphisms(const EdgeLabelledGraph& g) {
  const auto d = matrix(g);
  IndexMap p(g.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
  std::vector<IndexMap> out;
  do {
    if (preserves(d, p)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline bool is_automorphism(const EdgeLabelledGraph& g, const IndexMap& f) {
  if (f.size() != g.size()) return false;
  std::vector<char> hit(g.size(), 0);
  for (auto v : f) {
    if (v >= g.size() || hit[v]) return false;
    hit[v] = 1;
  }
  return preserves(matrix(g), f);
}

inline bool extends(const IndexMap& total, const IndexMap& partial) {
  for (std::size_t v = 0; v < partial.size(); ++v)
    if (partial[v] != kUnmapped && total[v] != partial[v]) return false;
  return true;
}

// Every isomorphism between induced subgraphs with at most `max_domain`
// pairs, as sorted pair lists in lexicographic order.
inline std::vector<std::vector<std::pair<VertexIndex, VertexIndex>>> partial_automorphisms(
    const EdgeLabelledGraph& g, std::size_t max_domain) {
  const auto d = matrix(g);
  const std::size_t n = g.size();
  std::set<std::vector<std::pair<VertexIndex, VertexIndex>>> out;
  for (std::uint32_t dom = 0; dom < (1u << n); ++dom) {
    std::vector<VertexIndex> sources;
    for (std::size_t v = 0; v < n; ++v)
      if (dom >> v & 1u) sources.push_back(v);
    if (sources.size() > max_domain) continue;
    for (std::uint32_t img = 0; img < (1u << n); ++img) {
      if (std::popcount(img) != static_cast<int>(sources.size())) continue;
      std::vector<VertexIndex> targets;
      for (std::size_t v = 0; v < n; ++v)
        if (img >> v & 1u) targets.push_back(v);
      do {
        IndexMap f(n, kUnmapped);
        for (std::size_t i = 0; i < sources.size(); ++i) f[sources[i]] = targets[i];
        if (!preserves(d, f)) continue;
        std::vector<std::pair<VertexIndex, VertexIndex>> pairs;
        for (std::size_t i = 0; i < sources.size(); ++i) pairs.emplace_back(sources[i], targets[i]);
        out.insert(pairs);
      } while (std::next_permutation(targets.begin(), targets.end()));
    }
  }
  return {out.begin(), out.end()};
}

inline IndexMap to_index(std::size_t n, const std::vector<std::pair<VertexIndex, VertexIndex>>& p) {
  IndexMap f(n, kUnmapped);
  for (auto [a, b] : p) f[a] = b;
  return f;
}

// Vertex sets of the given size whose induced subgraph is a cycle with one
// edge longer than the sum of the others. Value: the long edge.
inline std::map<std::vector<VertexIndex>, std::pair<VertexIndex, VertexIndex>>
induced_nonmetric_cycles(const EdgeLabelledGraph& g, std::size_t size) {
  const auto d = matrix(g);
  const std::size_t n = g.size();
  std::map<std::vector<VertexIndex>, std::pair<VertexIndex, VertexIndex>> out;
  std::vector<char> pick(n, 0);
  if (size > n) return out;
  std::fill(pick.end() - static_cast<long>(size), pick.end(), 1);
  do {
    std::vector<VertexIndex> s;
    for (std::size_t v = 0; v < n; ++v)
      if (pick[v]) s.push_back(v);
    bool cycle = true;
    Label total(0);
    for (auto u : s) {
      std::size_t deg = 0;
      for (auto v : s)
        if (u != v && d[u][v]) ++deg;
      cycle = cycle && deg == 2;
    }
    if (!cycle) continue;
    // Connected: walk around from s[0].
    std::vector<char> seen(n, 0);
    std::vector<VertexIndex> stack{s[0]};
    seen[s[0]] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto v : s)
        if (!seen[v] && d[u][v]) {
          seen[v] = 1;
          ++reached;
          stack.push_back(v);
        }
    }
    if (reached != s.size()) continue;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (d[s[i]][s[j]]) total += *d[s[i]][s[j]];
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (d[s[i]][s[j]] && *d[s[i]][s[j]] + *d[s[i]][s[j]] > total) out[s] = {s[i], s[j]};
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

// Any cycle (not necessarily induced) on at most `max_vertices` vertices
// with an edge longer than the rest, by enumerating simple paths.
inline bool has_nonmetric_cycle(const EdgeLabelledGraph& g, std::size_t max_vertices) {
  const auto d = matrix(g);
  const std::size_t n = g.size();
  std::vector<VertexIndex> path;
  std::vector<char> used(n, 0);
  bool found = false;
  auto dfs = [&](auto&& self, Label length) -> void {
    if (found) return;
    const VertexIndex last = path.back();
    if (path.size() >= 3 && d[last][path.front()] && *d[last][path.front()] > length) {
      found = true;
      return;
    }
    if (path.size() == max_vertices) return;
    for (VertexIndex v = 0; v < n; ++v)
      if (!used[v] && d[last][v]) {
        used[v] = 1;
        path.push_back(v);
        self(self, length + *d[last][v]);
        path.pop_back();
        used[v] = 0;
      }
  };
  for (VertexIndex s = 0; s < n && !found; ++s) {
    path = {s};
    used[s] = 1;
    dfs(dfs, Label(0));
    used[s] = 0;
  }
  return found;
}

// ---------------------------------------------------------------------------
// Generators

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Label random_label(Rng& rng, const std::vector<Label>& palette) {
  return palette[uniform(rng, 0, palette.size() - 1)];
}

inline std::vector<Label> integer_palette(std::size_t count) {
  std::vector<Label> p;
  for (std::size_t i = 1; i <= count; ++i) p.emplace_back(static_cast<std::int64_t>(i));
  return p;
}

inline EdgeLabelledGraph random_graph(Rng& rng, std::size_t n, double density,
                                      const std::vector<Label>& palette) {
  std::vector<eppa::IndexedEdge> edges;
  std::bernoulli_distribution coin(density);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v, random_label(rng, palette)});
  return EdgeLabelledGraph(vertex_names(n), edges);
}

// Random spanning tree plus extra edges.
inline EdgeLabelledGraph random_connected_graph(Rng& rng, std::size_t n, double extra,
                                                const std::vector<Label>& palette) {
  std::map<std::pair<std::size_t, std::size_t>, Label> edges;
  for (std::size_t v = 1; v < n; ++v) edges[{uniform(rng, 0, v - 1), v}] = random_label(rng, palette);
  std::bernoulli_distribution coin(extra);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (!edges.count({u, v}) && coin(rng)) edges[{u, v}] = random_label(rng, palette);
  std::vector<eppa::IndexedEdge> es;
  for (auto& [p, l] : edges) es.push_back({p.first, p.second, l});
  return EdgeLabelledGraph(vertex_names(n), es);
}

inline EdgeLabelledGraph complete_from(const std::vector<std::string>& names, const Matrix& d) {
  std::vector<eppa::IndexedEdge> es;
  for (std::size_t u = 0; u < d.size(); ++u)
    for (std::size_t v = u + 1; v < d.size(); ++v) es.push_back({u, v, *d[u][v]});
  return EdgeLabelledGraph(names, es);
}

inline EdgeLabelledGraph random_metric_space(Rng& rng, std::size_t n,
                                             const std::vector<Label>& palette) {
  const auto g = random_connected_graph(rng, n, 0.5, palette);
  return complete_from(g.vertices(), all_pairs_shortest(g));
}

// A cycle of length n whose closing edge exceeds the sum of the others.
inline EdgeLabelledGraph random_nonmetric_cycle(Rng& rng, std::size_t n,
                                                const std::vector<Label>& palette) {
  std::vector<eppa::IndexedEdge> es;
  Label sum(0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    es.push_back({i, i + 1, random_label(rng, palette)});
    sum += es.back().label;
  }
  es.push_back({0, n - 1, sum + Label(1, static_cast<std::int64_t>(uniform(rng, 1, 4)))});
  return EdgeLabelledGraph(vertex_names(n), es);
}

}  // namespace oracle
