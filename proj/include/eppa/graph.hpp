#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eppa/label.hpp"

namespace eppa {

/// Vertex names. Their lexicographic order is the canonical order used for
/// every tie-break in the construction.
using VertexId = std::string;
using VertexIndex = std::size_t;

inline constexpr VertexIndex kUnmapped = std::numeric_limits<VertexIndex>::max();

struct Neighbor {
  VertexIndex vertex;
  Label label;
};

struct Edge {
  VertexId u;
  VertexId v;
  Label label;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct IndexedEdge {
  VertexIndex u;
  VertexIndex v;
  Label label;
  friend bool operator==(const IndexedEdge&, const IndexedEdge&) = default;
};

/// Finite undirected graph whose edges carry positive rational labels.
///
/// Vertices are stored in canonical (sorted) order, so a VertexIndex is also
/// the rank of the vertex name. Adjacency lists are sorted by neighbour
/// index. Non-edges are simply absent. Immutable once built.
class EdgeLabelledGraph {
 public:
  EdgeLabelledGraph() = default;

  /// `names` may be in any order; edge endpoints index into `names` as
  /// given. Throws PreconditionError on duplicate names, loops, duplicate
  /// pairs, out-of-range endpoints or non-positive labels.
  EdgeLabelledGraph(std::vector<VertexId> names, std::vector<IndexedEdge> edges);

  static EdgeLabelledGraph from_edges(std::vector<VertexId> names,
                                      const std::vector<Edge>& edges);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  std::size_t edge_count() const { return edge_count_; }

  const std::vector<VertexId>& vertices() const { return names_; }
  const VertexId& name(VertexIndex v) const { return names_[v]; }
  std::optional<VertexIndex> find(std::string_view name) const;
  /// Throws PreconditionError for unknown names.
  VertexIndex index_of(std::string_view name) const;

  std::span<const Neighbor> neighbors(VertexIndex v) const { return adj_[v]; }
  std::size_t degree(VertexIndex v) const { return adj_[v].size(); }
  std::optional<Label> label(VertexIndex u, VertexIndex v) const;
  bool adjacent(VertexIndex u, VertexIndex v) const { return label(u, v).has_value(); }

  /// Canonical edge list: u < v, sorted by (u, v).
  std::vector<IndexedEdge> edges() const;
  std::vector<Edge> named_edges() const;

  /// Distinct labels in ascending order.
  std::vector<Label> spectrum() const;

  friend bool operator==(const EdgeLabelledGraph& a, const EdgeLabelledGraph& b);

 private:
  std::vector<VertexId> names_;
  std::vector<std::vector<Neighbor>> adj_;
  std::size_t edge_count_ = 0;
};

/// Finite partial function between vertex sets, kept as an explicit list of
/// pairs sorted by source. Sources are unique; injectivity is a property
/// callers query rather than a construction invariant, so that
/// non-injective maps can reach the checks that reject them.
class PartialMap {
 public:
  using Pair = std::pair<VertexId, VertexId>;

  PartialMap() = default;
  /// Throws PreconditionError if a source appears twice.
  explicit PartialMap(std::vector<Pair> pairs);

  static PartialMap identity(std::span<const VertexId> vertices);

  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  std::optional<VertexId> apply(std::string_view x) const;
  bool contains(std::string_view x) const { return apply(x).has_value(); }
  std::vector<VertexId> domain() const;
  /// Sorted.
  std::vector<VertexId> image() const;
  bool is_injective() const;

  /// Throws PreconditionError if not injective.
  PartialMap inverse() const;
  /// `next` after `*this`, defined on the elements whose image lies in
  /// Dom(next). Throws PreconditionError unless Im(*this) ⊆ Dom(next).
  PartialMap then(const PartialMap& next) const;
  PartialMap restrict_to(std::span<const VertexId> subset) const;

  friend bool operator==(const PartialMap&, const PartialMap&) = default;

 private:
  std::vector<Pair> pairs_;
};

enum class MapMode { homomorphism, monomorphism, embedding, automorphism };

std::string_view to_string(MapMode mode);

/// Complete, and every triple satisfies the triangle inequality.
bool is_metric_space(const EdgeLabelledGraph& g);

/// For a metric space, some triple (x, y, z) with d(x,y) > d(x,z) + d(z,y),
/// or a non-adjacent pair reported as (x, y, x). Absent when metric.
struct MetricViolation {
  VertexIndex x;
  VertexIndex y;
  VertexIndex z;
  bool missing_edge;
};
std::optional<MetricViolation> find_metric_violation(const EdgeLabelledGraph& g);

/// Throws PreconditionError for names not in g.
EdgeLabelledGraph induced_subgraph(const EdgeLabelledGraph& g, std::span<const VertexId> subset);
EdgeLabelledGraph induced_subgraph(const EdgeLabelledGraph& g,
                                   std::span<const VertexIndex> subset);

/// Verdict of `f` under `mode`. Contract violations (domain or image outside
/// the graphs, non-injective map for an injective mode, non-total map or
/// g != h for automorphism mode) throw PreconditionError instead of
/// returning false.
bool check_map(const PartialMap& f, const EdgeLabelledGraph& g, const EdgeLabelledGraph& h,
               MapMode mode);

/// Index-level map: target[v] is the image of v, or kUnmapped.
using IndexMap = std::vector<VertexIndex>;

IndexMap to_index_map(const PartialMap& f, const EdgeLabelledGraph& from,
                      const EdgeLabelledGraph& to);
PartialMap to_partial_map(const IndexMap& f, const EdgeLabelledGraph& from,
                          const EdgeLabelledGraph& to);

/// True iff `f` is a total bijection of g preserving and reflecting labels.
/// Linear in the number of edges. No exceptions.
bool is_automorphism(const IndexMap& f, const EdgeLabelledGraph& g);

/// True iff `f` is injective and is an isomorphism between the subgraphs
/// induced on its domain and its image.
bool is_partial_automorphism(const IndexMap& f, const EdgeLabelledGraph& g);

/// Visits every isomorphism between induced subgraphs of g with at most
/// `max_domain_size` pairs, including the empty map, exactly once, in
/// lexicographic order of the sorted pair lists. The visitor returns false
/// to stop early.
void for_each_partial_automorphism(
    const EdgeLabelledGraph& g, std::size_t max_domain_size,
    const std::function<bool(std::span<const std::pair<VertexIndex, VertexIndex>>)>& visit);

std::vector<PartialMap> enumerate_partial_automorphisms(const EdgeLabelledGraph& g,
                                                        std::size_t max_domain_size);

/// Labels of a spectrum rescaled to integers by the least common
/// denominator. Absent if the rescaled values (times `headroom`, to leave
/// room for sums of that many terms) would not fit in 62 bits.
struct IntegerScale {
  std::vector<Label> labels;          // ascending
  std::vector<std::int64_t> weights;  // weights[i] == labels[i] * denominator
  std::int64_t denominator = 1;

  std::int64_t weight_of(const Label& l) const;
};
std::optional<IntegerScale> integer_scale(std::span<const Label> spectrum, std::uint64_t headroom);

}  // namespace eppa
