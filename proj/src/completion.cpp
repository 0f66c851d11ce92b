#include "eppa/completion.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "eppa/errors.hpp"

namespace eppa {

std::vector<VertexIndex> CycleWitness::members() const {
  std::vector<VertexIndex> out = vertices;
  std::sort(out.begin(), out.end());
  return out;
}

bool is_connected(const EdgeLabelledGraph& g) {
  if (g.empty()) throw PreconditionError("connectivity of the empty graph is undefined");
  return connected_component(g, 0).size() == g.size();
}

std::vector<VertexIndex> connected_component(const EdgeLabelledGraph& g, VertexIndex start) {
  if (start >= g.size()) throw PreconditionError("start vertex out of range");
  std::vector<bool> seen(g.size(), false);
  std::vector<VertexIndex> stack{start}, out;
  seen[start] = true;
  while (!stack.empty()) {
    VertexIndex u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (const auto& nb : g.neighbors(u))
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = true;
        stack.push_back(nb.vertex);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Labels are handled either as integers rescaled by a common denominator
// or, when that would overflow, as rationals directly.
template <typename W>
struct Weights {
  // adjacency sorted by ascending weight
  std::vector<std::vector<std::pair<W, VertexIndex>>> by_weight;
  std::function<Label(const W&)> to_label;
};

Weights<std::int64_t> scaled_weights(const EdgeLabelledGraph& g, const IntegerScale& scale) {
  Weights<std::int64_t> w;
  w.by_weight.resize(g.size());
  for (VertexIndex u = 0; u < g.size(); ++u) {
    for (const auto& nb : g.neighbors(u)) w.by_weight[u].emplace_back(scale.weight_of(nb.label), nb.vertex);
    std::sort(w.by_weight[u].begin(), w.by_weight[u].end());
  }
  const std::int64_t den = scale.denominator;
  w.to_label = [den](const std::int64_t& x) { return Rational(x, den); };
  return w;
}

Weights<Label> rational_weights(const EdgeLabelledGraph& g) {
  Weights<Label> w;
  w.by_weight.resize(g.size());
  for (VertexIndex u = 0; u < g.size(); ++u) {
    for (const auto& nb : g.neighbors(u)) w.by_weight[u].emplace_back(nb.label, nb.vertex);
    std::sort(w.by_weight[u].begin(), w.by_weight[u].end());
  }
  w.to_label = [](const Label& x) { return x; };
  return w;
}

template <typename Fn>
auto with_weights(const EdgeLabelledGraph& g, std::uint64_t headroom, Fn&& fn) {
  const auto spectrum = g.spectrum();
  if (auto scale = integer_scale(spectrum, headroom)) return fn(scaled_weights(g, *scale));
  return fn(rational_weights(g));
}

template <typename W>
EdgeLabelledGraph complete_with(const EdgeLabelledGraph& g, const Weights<W>& w) {
  const std::size_t n = g.size();
  std::vector<IndexedEdge> edges;
  edges.reserve(n * (n - 1) / 2);
  std::vector<W> dist(n);
  std::vector<bool> reached(n), done(n);
  using Item = std::pair<W, VertexIndex>;
  for (VertexIndex s = 0; s < n; ++s) {
    std::fill(reached.begin(), reached.end(), false);
    std::fill(done.begin(), done.end(), false);
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    dist[s] = W{};
    reached[s] = true;
    queue.emplace(W{}, s);
    while (!queue.empty()) {
      auto [d, u] = queue.top();
      queue.pop();
      if (done[u]) continue;
      done[u] = true;
      for (const auto& [weight, v] : w.by_weight[u]) {
        if (done[v]) continue;
        W candidate = d + weight;
        if (!reached[v] || candidate < dist[v]) {
          reached[v] = true;
          dist[v] = candidate;
          queue.emplace(candidate, v);
        }
      }
    }
    for (VertexIndex t = s + 1; t < n; ++t) {
      if (!reached[t]) throw PreconditionError("shortest path completion needs a connected graph");
      edges.push_back({s, t, w.to_label(dist[t])});
    }
  }
  return EdgeLabelledGraph(g.vertices(), std::move(edges));
}

// Depth-first search over simple paths starting at `start`, keeping only
// paths short enough to be closed by a longer edge back to `start`.
template <typename W>
class CycleSearch {
 public:
  CycleSearch(const EdgeLabelledGraph& g, const Weights<W>& w) : g_(g), w_(w) {
    on_path_.assign(g.size(), false);
  }

  // Induced cycles of exactly `size` vertices whose long edge is
  // {start, last} with start < last.
  void induced_from(VertexIndex start, std::size_t size, std::vector<CycleWitness>& out) {
    if (w_.by_weight[start].empty()) return;
    size_ = size;
    start_ = start;
    max_close_ = w_.by_weight[start].back().first;
    min_weight_ = global_min();
    path_ = {start};
    on_path_[start] = true;
    induced_step(W{}, out);
    on_path_[start] = false;
  }

  // Any non-metric cycle through `start` as a long-edge endpoint with at
  // most `max_vertices` vertices.
  std::optional<CycleWitness> any_from(VertexIndex start, std::size_t max_vertices,
                                       std::uint64_t& budget) {
    if (w_.by_weight[start].empty()) return std::nullopt;
    size_ = max_vertices;
    start_ = start;
    max_close_ = w_.by_weight[start].back().first;
    path_ = {start};
    on_path_[start] = true;
    auto found = any_step(W{}, budget);
    on_path_[start] = false;
    return found;
  }

 private:
  W global_min() const {
    bool have = false;
    W best{};
    for (const auto& list : w_.by_weight)
      if (!list.empty() && (!have || list.front().first < best)) {
        best = list.front().first;
        have = true;
      }
    return best;
  }

  CycleWitness witness(const W& length, const W& closing) const {
    CycleWitness c;
    c.vertices = path_;
    if (c.vertices.back() < c.vertices.front()) std::reverse(c.vertices.begin(), c.vertices.end());
    c.deficit = w_.to_label(closing) - w_.to_label(length);
    return c;
  }

  void induced_step(const W& length, std::vector<CycleWitness>& out) {
    const VertexIndex tip = path_.back();
    const std::size_t remaining = size_ - path_.size();  // vertices still to add
    for (const auto& [weight, v] : w_.by_weight[tip]) {
      W next = length + weight;
      // The remaining (remaining - 1) edges add at least min_weight_ each,
      // and the closing edge must still be strictly longer.
      W lower = next;
      for (std::size_t i = 1; i < remaining; ++i) lower = lower + min_weight_;
      if (!(lower < max_close_)) break;
      if (on_path_[v]) continue;
      if (remaining == 1 && v < start_) continue;
      // Chords: v may touch only the tip, and `start` iff v closes the cycle.
      bool chord = false;
      for (std::size_t j = 0; j + 1 < path_.size(); ++j) {
        if (j == 0 && remaining == 1) continue;
        if (g_.adjacent(v, path_[j])) {
          chord = true;
          break;
        }
      }
      if (chord) continue;
      if (remaining == 1) {
        if (!g_.adjacent(v, start_)) continue;
        W close_w = weight_between(start_, v);
        if (next < close_w) {
          path_.push_back(v);
          out.push_back(witness(next, close_w));
          path_.pop_back();
        }
        continue;
      }
      path_.push_back(v);
      on_path_[v] = true;
      induced_step(next, out);
      on_path_[v] = false;
      path_.pop_back();
    }
  }

  std::optional<CycleWitness> any_step(const W& length, std::uint64_t& budget) {
    const VertexIndex tip = path_.back();
    for (const auto& [weight, v] : w_.by_weight[tip]) {
      W next = length + weight;
      if (!(next < max_close_)) break;
      if (on_path_[v]) continue;
      if (budget == 0) throw BudgetExhausted("non-metric cycle search exceeded its work budget");
      --budget;
      path_.push_back(v);
      if (path_.size() >= 3 && g_.adjacent(v, start_)) {
        W close_w = weight_between(start_, v);
        if (next < close_w) {
          auto found = witness(next, close_w);
          path_.pop_back();
          return found;
        }
      }
      if (path_.size() < size_) {
        on_path_[v] = true;
        auto found = any_step(next, budget);
        on_path_[v] = false;
        if (found) {
          path_.pop_back();
          return found;
        }
      }
      path_.pop_back();
    }
    return std::nullopt;
  }

  W weight_between(VertexIndex a, VertexIndex b) const {
    for (const auto& [weight, v] : w_.by_weight[a])
      if (v == b) return weight;
    throw InvariantViolation("weight_between on a non-edge");
  }

  const EdgeLabelledGraph& g_;
  const Weights<W>& w_;
  std::vector<bool> on_path_;
  std::vector<VertexIndex> path_;
  std::size_t size_ = 0;
  VertexIndex start_ = 0;
  W max_close_{};
  W min_weight_{};
};

}  // namespace

EdgeLabelledGraph shortest_path_completion(const EdgeLabelledGraph& g) {
  if (g.empty()) throw PreconditionError("shortest path completion of the empty graph");
  if (!is_connected(g)) throw PreconditionError("shortest path completion needs a connected graph");
  return with_weights(g, g.size() + 1, [&](const auto& w) { return complete_with(g, w); });
}

std::vector<CycleWitness> find_induced_nonmetric_cycles(const EdgeLabelledGraph& g,
                                                        std::size_t size) {
  if (size < 3) throw PreconditionError("cycles have at least 3 vertices");
  std::vector<CycleWitness> out;
  if (size > g.size()) return out;
  with_weights(g, size + 1, [&](const auto& w) {
    using W = typename std::decay_t<decltype(w.by_weight[0][0].first)>;
    CycleSearch<W> search(g, w);
    for (VertexIndex s = 0; s < g.size(); ++s) search.induced_from(s, size, out);
    return 0;
  });
  std::sort(out.begin(), out.end(), [](const CycleWitness& a, const CycleWitness& b) {
    return a.members() < b.members();
  });
  return out;
}

std::optional<CycleWitness> has_nonmetric_cycle_up_to(const EdgeLabelledGraph& g,
                                                      std::size_t max_vertices,
                                                      std::uint64_t budget) {
  if (max_vertices < 3) throw PreconditionError("cycles have at least 3 vertices");
  return with_weights(g, max_vertices + 1, [&](const auto& w) -> std::optional<CycleWitness> {
    using W = typename std::decay_t<decltype(w.by_weight[0][0].first)>;
    CycleSearch<W> search(g, w);
    std::uint64_t left = budget;
    for (VertexIndex s = 0; s < g.size(); ++s)
      if (auto found = search.any_from(s, max_vertices, left)) return found;
    return std::nullopt;
  });
}

}  // namespace eppa
