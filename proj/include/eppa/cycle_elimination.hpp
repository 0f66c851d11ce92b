#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "eppa/completion.hpp"
#include "eppa/graph.hpp"
#include "eppa/set_representation.hpp"

namespace eppa {

/// Vertex set of C_i inducing a non-metric cycle, identified by its sorted
/// member list.
struct BadSet {
  std::vector<VertexIndex> members;  // ascending
  CycleWitness cycle;                // long edge {cycle.long_u(), cycle.long_v()}

  bool is_long_edge(VertexIndex x, VertexIndex y) const;
  friend bool operator==(const BadSet&, const BadSet&) = default;
};

/// Bad sets of size i + 1 in C_i, ordered by member list.
std::vector<BadSet> bad_sets(const EdgeLabelledGraph& ci, std::size_t i);

struct AnchorBit {
  std::size_t bad_set;
  VertexIndex vertex;  // in C_i, a member of the copy A_i
  std::uint8_t bit;
  friend auto operator<=>(const AnchorBit&, const AnchorBit&) = default;
};

/// Bits fixing the copy of A inside the next level: for every bad set M
/// meeting A_i, 0 on M ∩ A_i, except that when M ∩ A_i is M's long edge the
/// larger endpoint gets 1. Sorted by (bad set, vertex). Throws
/// InvariantViolation if some M meets A_i in three or more vertices, or in
/// two vertices that are not consecutive on M's cycle.
std::vector<AnchorBit> anchor_valuations(const EdgeLabelledGraph& ci,
                                         const std::vector<VertexIndex>& copy,
                                         const std::vector<BadSet>& bad);

/// One level C_{i+1} of the tower: vertices are pairs (x, chi) with x in
/// C_i and chi a 0/1 valuation of the bad sets containing x.
class LevelGraph {
 public:
  int level() const { return level_; }
  const EdgeLabelledGraph& graph() const { return graph_; }
  /// Bad sets of C_i that this level unwinds.
  const std::vector<BadSet>& bad_sets() const { return bad_sets_; }
  const std::vector<AnchorBit>& anchors() const { return anchors_; }
  /// Indices of the bad sets containing x (a vertex of C_i), ascending.
  const std::vector<std::uint32_t>& bad_sets_of(VertexIndex x) const { return bad_sets_of_[x]; }
  /// Projection to C_i.
  VertexIndex base(VertexIndex v) const { return base_[v]; }
  const std::vector<VertexIndex>& projection() const { return base_; }
  /// Bit j is the value on bad_sets_of(base(v))[j].
  std::uint64_t valuation(VertexIndex v) const { return valuation_[v]; }
  /// Value of v's valuation on bad set `m`; m must contain base(v).
  std::uint8_t bit(VertexIndex v, std::size_t m) const;
  VertexIndex vertex_of(VertexIndex x, std::uint64_t valuation) const;
  /// Input vertex -> vertex of this level.
  const IndexMap& embedding() const { return embedding_; }
  /// Bad set with the given sorted members, if any.
  std::optional<std::size_t> find_bad_set(const std::vector<VertexIndex>& members) const;
  std::size_t base_size() const { return bad_sets_of_.size(); }

  /// Builds the level from C_i, its bad sets and the anchor table. Throws
  /// CapExceeded if the number of (x, chi) pairs exceeds `vertex_cap`.
  static LevelGraph assemble(const EdgeLabelledGraph& ci, int level, std::vector<BadSet> bad,
                             std::vector<AnchorBit> anchors, const IndexMap& copy_in_ci,
                             std::uint64_t vertex_cap);

  /// Serialized form: bad sets with their cycles and the anchor table, in
  /// C_i vertex names. The graph itself is rebuilt from these on load.
  nlohmann::json to_json(const EdgeLabelledGraph& ci) const;
  static LevelGraph from_json(const nlohmann::json& doc, const EdgeLabelledGraph& ci,
                              const IndexMap& copy_in_ci, std::uint64_t vertex_cap);

 private:
  int level_ = 0;
  EdgeLabelledGraph graph_;
  std::vector<BadSet> bad_sets_;
  std::vector<AnchorBit> anchors_;
  std::vector<std::vector<std::uint32_t>> bad_sets_of_;
  std::vector<VertexIndex> base_;
  std::vector<std::uint64_t> valuation_;
  std::vector<std::size_t> offset_;       // per C_i vertex, start in vertex_at_
  std::vector<VertexIndex> vertex_at_;    // offset_[x] + valuation -> vertex
  IndexMap embedding_;
  std::map<std::vector<VertexIndex>, std::size_t> bad_index_;
};

/// C_{i+1} from C_i (level i) and the copy of A in it.
LevelGraph build_next_level(const EdgeLabelledGraph& ci, int i, const IndexMap& copy_in_ci,
                            std::uint64_t vertex_cap = kDefaultVertexCap);

/// Bad sets whose valuation `phi` flips. `phi` is a partial automorphism of
/// the copy of A in `next` (index form over next's vertices) and `hat_phi`
/// an automorphism of C_i extending its projection. Ascending indices.
/// Throws InvariantViolation if two witnesses disagree on a bad set.
std::vector<std::size_t> compute_flip_set(const LevelGraph& next, const IndexMap& phi,
                                          const IndexMap& hat_phi);

/// The automorphism (x, chi) -> (hat_phi(x), chi') of the level with
/// chi'(hat_phi(M)) = chi(M), inverted for M in `flips`. Throws
/// PreconditionError if hat_phi is not an automorphism of C_i.
IndexMap lift_automorphism(const EdgeLabelledGraph& ci, const LevelGraph& next,
                           const IndexMap& hat_phi, const std::vector<std::size_t>& flips);

}  // namespace eppa
