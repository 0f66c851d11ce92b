#include "eppa/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "eppa/errors.hpp"

namespace eppa {

EdgeLabelledGraph::EdgeLabelledGraph(std::vector<VertexId> names, std::vector<IndexedEdge> edges) {
  const std::size_t n = names.size();
  std::vector<VertexIndex> order(n);
  std::iota(order.begin(), order.end(), VertexIndex{0});
  if (!std::is_sorted(names.begin(), names.end()))
    std::sort(order.begin(), order.end(),
              [&](VertexIndex a, VertexIndex b) { return names[a] < names[b]; });
  std::vector<VertexIndex> rank(n);
  names_.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    rank[order[r]] = r;
    names_.push_back(std::move(names[order[r]]));
    if (r > 0 && names_[r] == names_[r - 1])
      throw PreconditionError("duplicate vertex '" + names_[r] + "'");
  }

  adj_.assign(n, {});
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw PreconditionError("edge endpoint out of range");
    if (e.u == e.v) throw PreconditionError("loop at vertex '" + names_[rank[e.u]] + "'");
    if (!e.label.is_positive())
      throw PreconditionError("edge label must be positive, got " + e.label.to_string());
    VertexIndex u = rank[e.u], v = rank[e.v];
    adj_[u].push_back({v, e.label});
    adj_[v].push_back({u, e.label});
  }
  for (VertexIndex u = 0; u < n; ++u) {
    auto& list = adj_[u];
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
    for (std::size_t i = 1; i < list.size(); ++i)
      if (list[i].vertex == list[i - 1].vertex)
        throw PreconditionError("duplicate edge {'" + names_[u] + "', '" +
                                names_[list[i].vertex] + "'}");
  }
  edge_count_ = edges.size();
}

EdgeLabelledGraph EdgeLabelledGraph::from_edges(std::vector<VertexId> names,
                                                const std::vector<Edge>& edges) {
  std::vector<VertexId> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  auto lookup = [&](const VertexId& name) -> VertexIndex {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), name);
    if (it == sorted.end() || *it != name)
      throw PreconditionError("edge endpoint '" + name + "' is not a vertex");
    return static_cast<VertexIndex>(it - sorted.begin());
  };
  std::vector<IndexedEdge> indexed;
  indexed.reserve(edges.size());
  for (const auto& e : edges) indexed.push_back({lookup(e.u), lookup(e.v), e.label});
  return EdgeLabelledGraph(std::move(sorted), std::move(indexed));
}

std::optional<VertexIndex> EdgeLabelledGraph::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const VertexId& a, std::string_view b) { return a < b; });
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<VertexIndex>(it - names_.begin());
}

VertexIndex EdgeLabelledGraph::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw PreconditionError("unknown vertex '" + std::string(name) + "'");
}

std::optional<Label> EdgeLabelledGraph::label(VertexIndex u, VertexIndex v) const {
  const auto& list = adj_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbor& n, VertexIndex x) { return n.vertex < x; });
  if (it == list.end() || it->vertex != v) return std::nullopt;
  return it->label;
}

std::vector<IndexedEdge> EdgeLabelledGraph::edges() const {
  std::vector<IndexedEdge> out;
  out.reserve(edge_count_);
  for (VertexIndex u = 0; u < size(); ++u)
    for (const auto& n : adj_[u])
      if (u < n.vertex) out.push_back({u, n.vertex, n.label});
  return out;
}

std::vector<Edge> EdgeLabelledGraph::named_edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (const auto& e : edges()) out.push_back({names_[e.u], names_[e.v], e.label});
  return out;
}

std::vector<Label> EdgeLabelledGraph::spectrum() const {
  std::set<Label> seen;
  for (VertexIndex u = 0; u < size(); ++u)
    for (const auto& n : adj_[u]) seen.insert(n.label);
  return {seen.begin(), seen.end()};
}

bool operator==(const EdgeLabelledGraph& a, const EdgeLabelledGraph& b) {
  if (a.names_ != b.names_ || a.edge_count_ != b.edge_count_) return false;
  for (VertexIndex u = 0; u < a.size(); ++u) {
    const auto& x = a.adj_[u];
    const auto& y = b.adj_[u];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].vertex != y[i].vertex || x[i].label != y[i].label) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

PartialMap::PartialMap(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  for (std::size_t i = 1; i < pairs_.size(); ++i)
    if (pairs_[i].first == pairs_[i - 1].first)
      throw PreconditionError("partial map assigns '" + pairs_[i].first + "' twice");
}

PartialMap PartialMap::identity(std::span<const VertexId> vertices) {
  std::vector<Pair> pairs;
  for (const auto& v : vertices) pairs.emplace_back(v, v);
  return PartialMap(std::move(pairs));
}

std::optional<VertexId> PartialMap::apply(std::string_view x) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), x,
                             [](const Pair& p, std::string_view k) { return p.first < k; });
  if (it == pairs_.end() || it->first != x) return std::nullopt;
  return it->second;
}

std::vector<VertexId> PartialMap::domain() const {
  std::vector<VertexId> out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.push_back(p.first);
  return out;
}

std::vector<VertexId> PartialMap::image() const {
  std::vector<VertexId> out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.push_back(p.second);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool PartialMap::is_injective() const { return image().size() == pairs_.size(); }

PartialMap PartialMap::inverse() const {
  if (!is_injective()) throw PreconditionError("partial map is not injective");
  std::vector<Pair> flipped;
  flipped.reserve(pairs_.size());
  for (const auto& [x, y] : pairs_) flipped.emplace_back(y, x);
  return PartialMap(std::move(flipped));
}

PartialMap PartialMap::then(const PartialMap& next) const {
  std::vector<Pair> out;
  out.reserve(pairs_.size());
  for (const auto& [x, y] : pairs_) {
    auto z = next.apply(y);
    if (!z) throw PreconditionError("composition undefined: '" + y + "' not in domain");
    out.emplace_back(x, *z);
  }
  return PartialMap(std::move(out));
}

PartialMap PartialMap::restrict_to(std::span<const VertexId> subset) const {
  std::vector<Pair> out;
  for (const auto& p : pairs_)
    if (std::find(subset.begin(), subset.end(), p.first) != subset.end()) out.push_back(p);
  return PartialMap(std::move(out));
}

// ---------------------------------------------------------------------------

std::string_view to_string(MapMode mode) {
  switch (mode) {
    case MapMode::homomorphism: return "homomorphism";
    case MapMode::monomorphism: return "monomorphism";
    case MapMode::embedding: return "embedding";
    case MapMode::automorphism: return "automorphism";
  }
  return "?";
}

std::int64_t IntegerScale::weight_of(const Label& l) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), l);
  ensure(it != labels.end() && *it == l, "label outside scaled spectrum");
  return weights[static_cast<std::size_t>(it - labels.begin())];
}

std::optional<IntegerScale> integer_scale(std::span<const Label> spectrum, std::uint64_t headroom) {
  constexpr __int128 kLimit = __int128(1) << 62;
  IntegerScale scale;
  scale.labels.assign(spectrum.begin(), spectrum.end());
  std::sort(scale.labels.begin(), scale.labels.end());
  __int128 lcm = 1;
  for (const auto& l : scale.labels) {
    __int128 d = l.denominator();
    __int128 a = lcm, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    lcm = lcm / a * d;
    if (lcm > kLimit) return std::nullopt;
  }
  scale.denominator = static_cast<std::int64_t>(lcm);
  const __int128 room = headroom == 0 ? 1 : __int128(headroom);
  for (const auto& l : scale.labels) {
    __int128 w = __int128(l.numerator()) * (lcm / l.denominator());
    if (w * room > kLimit) return std::nullopt;
    scale.weights.push_back(static_cast<std::int64_t>(w));
  }
  return scale;
}

std::optional<MetricViolation> find_metric_violation(const EdgeLabelledGraph& g) {
  const std::size_t n = g.size();
  for (VertexIndex x = 0; x < n; ++x)
    if (g.degree(x) != n - 1) {
      for (VertexIndex y = 0; y < n; ++y)
        if (y != x && !g.adjacent(x, y)) return MetricViolation{x, y, x, true};
    }
  if (n < 3) return std::nullopt;

  // Dense matrix of integer-rescaled distances; sums of two need headroom 2.
  const auto spectrum = g.spectrum();
  if (auto scale = integer_scale(spectrum, 2)) {
    std::vector<std::int64_t> d(n * n, 0);
    for (VertexIndex x = 0; x < n; ++x)
      for (const auto& nb : g.neighbors(x)) d[x * n + nb.vertex] = scale->weight_of(nb.label);
    for (VertexIndex x = 0; x < n; ++x)
      for (VertexIndex y = x + 1; y < n; ++y) {
        const std::int64_t dxy = d[x * n + y];
        const std::int64_t* row_x = &d[x * n];
        const std::int64_t* row_y = &d[y * n];
        for (VertexIndex z = 0; z < n; ++z) {
          if (z == x || z == y) continue;
          if (dxy > row_x[z] + row_y[z]) return MetricViolation{x, y, z, false};
        }
      }
    return std::nullopt;
  }
  for (VertexIndex x = 0; x < n; ++x)
    for (VertexIndex y = x + 1; y < n; ++y) {
      const Label dxy = *g.label(x, y);
      for (VertexIndex z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        if (dxy > *g.label(x, z) + *g.label(z, y)) return MetricViolation{x, y, z, false};
      }
    }
  return std::nullopt;
}

bool is_metric_space(const EdgeLabelledGraph& g) { return !find_metric_violation(g).has_value(); }

EdgeLabelledGraph induced_subgraph(const EdgeLabelledGraph& g, std::span<const VertexIndex> subset) {
  std::vector<VertexIndex> local(g.size(), kUnmapped);
  std::vector<VertexId> names;
  names.reserve(subset.size());
  for (VertexIndex v : subset) {
    if (v >= g.size()) throw PreconditionError("vertex index out of range");
    if (local[v] != kUnmapped) throw PreconditionError("vertex '" + g.name(v) + "' listed twice");
    local[v] = names.size();
    names.push_back(g.name(v));
  }
  std::vector<IndexedEdge> edges;
  for (VertexIndex v : subset)
    for (const auto& nb : g.neighbors(v))
      if (local[nb.vertex] != kUnmapped && v < nb.vertex)
        edges.push_back({local[v], local[nb.vertex], nb.label});
  return EdgeLabelledGraph(std::move(names), std::move(edges));
}

EdgeLabelledGraph induced_subgraph(const EdgeLabelledGraph& g, std::span<const VertexId> subset) {
  std::vector<VertexIndex> idx;
  idx.reserve(subset.size());
  for (const auto& name : subset) idx.push_back(g.index_of(name));
  return induced_subgraph(g, std::span<const VertexIndex>(idx));
}

IndexMap to_index_map(const PartialMap& f, const EdgeLabelledGraph& from,
                      const EdgeLabelledGraph& to) {
  IndexMap out(from.size(), kUnmapped);
  for (const auto& [x, y] : f.pairs()) {
    auto xi = from.find(x);
    if (!xi) throw PreconditionError("map domain vertex '" + x + "' not in source graph");
    auto yi = to.find(y);
    if (!yi) throw PreconditionError("map image vertex '" + y + "' not in target graph");
    out[*xi] = *yi;
  }
  return out;
}

PartialMap to_partial_map(const IndexMap& f, const EdgeLabelledGraph& from,
                          const EdgeLabelledGraph& to) {
  std::vector<PartialMap::Pair> pairs;
  for (VertexIndex v = 0; v < f.size(); ++v)
    if (f[v] != kUnmapped) pairs.emplace_back(from.name(v), to.name(f[v]));
  return PartialMap(std::move(pairs));
}

namespace {

// Edges of g inside Dom(f) map to equally labelled edges of h.
bool preserves_edges(const IndexMap& f, const EdgeLabelledGraph& g, const EdgeLabelledGraph& h,
                     std::size_t* edges_inside) {
  std::size_t count = 0;
  for (VertexIndex u = 0; u < g.size(); ++u) {
    if (f[u] == kUnmapped) continue;
    for (const auto& nb : g.neighbors(u)) {
      if (nb.vertex < u || f[nb.vertex] == kUnmapped) continue;
      ++count;
      if (f[u] == f[nb.vertex]) return false;  // edge collapsed onto a loop
      auto l = h.label(f[u], f[nb.vertex]);
      if (!l || *l != nb.label) return false;
    }
  }
  if (edges_inside) *edges_inside = count;
  return true;
}

std::size_t edges_within(const EdgeLabelledGraph& h, const std::vector<bool>& member) {
  std::size_t count = 0;
  for (VertexIndex u = 0; u < h.size(); ++u) {
    if (!member[u]) continue;
    for (const auto& nb : h.neighbors(u))
      if (nb.vertex > u && member[nb.vertex]) ++count;
  }
  return count;
}

}  // namespace

bool check_map(const PartialMap& f, const EdgeLabelledGraph& g, const EdgeLabelledGraph& h,
               MapMode mode) {
  const IndexMap m = to_index_map(f, g, h);
  if (mode != MapMode::homomorphism && !f.is_injective())
    throw PreconditionError("map is not injective");
  if (mode == MapMode::automorphism) {
    if (!(g == h)) throw PreconditionError("automorphism check needs g == h");
    if (f.size() != g.size()) throw PreconditionError("automorphism check needs a total map");
  }

  std::size_t inside = 0;
  if (!preserves_edges(m, g, h, &inside)) return false;
  if (mode == MapMode::homomorphism || mode == MapMode::monomorphism) return true;

  // An injective label-preserving map reflects edges iff no extra edges
  // appear among the image.
  std::vector<bool> in_image(h.size(), false);
  for (VertexIndex t : m)
    if (t != kUnmapped) in_image[t] = true;
  return edges_within(h, in_image) == inside;
}

bool is_automorphism(const IndexMap& f, const EdgeLabelledGraph& g) {
  if (f.size() != g.size()) return false;
  std::vector<bool> hit(g.size(), false);
  for (VertexIndex t : f) {
    if (t >= g.size() || hit[t]) return false;
    hit[t] = true;
  }
  // Labels around f(u), indexed by neighbour, checked against u's edges.
  std::vector<const Label*> around(g.size(), nullptr);
  for (VertexIndex u = 0; u < g.size(); ++u) {
    if (g.degree(u) != g.degree(f[u])) return false;
    for (const auto& nb : g.neighbors(f[u])) around[nb.vertex] = &nb.label;
    bool ok = true;
    for (const auto& nb : g.neighbors(u)) {
      const Label* l = around[f[nb.vertex]];
      if (!l || *l != nb.label) {
        ok = false;
        break;
      }
    }
    for (const auto& nb : g.neighbors(f[u])) around[nb.vertex] = nullptr;
    if (!ok) return false;
  }
  return true;
}

bool is_partial_automorphism(const IndexMap& f, const EdgeLabelledGraph& g) {
  if (f.size() != g.size()) return false;
  std::vector<bool> hit(g.size(), false);
  std::vector<VertexIndex> dom;
  for (VertexIndex v = 0; v < f.size(); ++v) {
    if (f[v] == kUnmapped) continue;
    if (f[v] >= g.size() || hit[f[v]]) return false;
    hit[f[v]] = true;
    dom.push_back(v);
  }
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = i + 1; j < dom.size(); ++j)
      if (g.label(dom[i], dom[j]) != g.label(f[dom[i]], f[dom[j]])) return false;
  return true;
}

void for_each_partial_automorphism(
    const EdgeLabelledGraph& g, std::size_t max_domain_size,
    const std::function<bool(std::span<const std::pair<VertexIndex, VertexIndex>>)>& visit) {
  const std::size_t n = g.size();
  std::vector<std::pair<VertexIndex, VertexIndex>> current;
  std::vector<bool> used(n, false);
  bool stop = false;

  // Emit the current map, then extend it by a pair whose source exceeds
  // every current source. This yields sorted pair lists in lexicographic
  // order, each exactly once.
  std::function<void(VertexIndex)> extend = [&](VertexIndex first_source) {
    if (stop) return;
    if (!visit(current)) {
      stop = true;
      return;
    }
    if (current.size() >= max_domain_size) return;
    for (VertexIndex x = first_source; x < n && !stop; ++x)
      for (VertexIndex t = 0; t < n && !stop; ++t) {
        if (used[t]) continue;
        bool consistent = true;
        for (const auto& [px, pt] : current)
          if (g.label(x, px) != g.label(t, pt)) {
            consistent = false;
            break;
          }
        if (!consistent) continue;
        used[t] = true;
        current.emplace_back(x, t);
        extend(x + 1);
        current.pop_back();
        used[t] = false;
      }
  };
  extend(0);
}

std::vector<PartialMap> enumerate_partial_automorphisms(const EdgeLabelledGraph& g,
                                                        std::size_t max_domain_size) {
  std::vector<PartialMap> out;
  for_each_partial_automorphism(g, max_domain_size, [&](auto pairs) {
    std::vector<PartialMap::Pair> named;
    for (const auto& [x, t] : pairs) named.emplace_back(g.name(x), g.name(t));
    out.emplace_back(std::move(named));
    return true;
  });
  return out;
}

}  // namespace eppa
