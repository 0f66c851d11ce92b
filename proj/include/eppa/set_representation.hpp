#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "eppa/combinatorics.hpp"
#include "eppa/graph.hpp"

namespace eppa {

inline constexpr std::uint64_t kDefaultVertexCap = 200'000;

/// Element of the universe the input vertices are represented over.
///
/// A pair token (x, y, i) with x < y is shared by exactly the two sets of
/// x and y, for 1 <= i <= index of d(x, y) in the spectrum. A padding token
/// (x, t) belongs to the set of x alone. Ordering: every pair token before
/// every padding token, each group lexicographic by input vertex order.
struct UniverseElement {
  enum class Kind : std::uint8_t { pair = 0, padding = 1 };
  Kind kind;
  VertexIndex x;       // input vertex
  VertexIndex y;       // second input vertex, pair tokens only
  std::uint32_t index; // i for pair tokens, t for padding tokens (1-based)

  friend auto operator<=>(const UniverseElement&, const UniverseElement&) = default;
};

/// Vertex-to-set assignment over a finite universe with
///   psi(x) ∩ psi(y) = { (x,y,i) : 1 <= i <= idx(d(x,y)) }  for adjacent x != y,
///   psi(x) ∩ psi(y) = ∅                                    for non-adjacent x != y,
///   |psi(x)| = k                                           for all x.
struct SetAssignment {
  std::vector<VertexId> vertex_names;  // the input graph's vertices
  std::vector<Label> spectrum;         // ascending
  std::vector<UniverseElement> universe;        // ascending
  std::vector<std::vector<std::uint32_t>> psi;  // per input vertex, ascending universe indices
  std::uint32_t k = 0;

  /// 1-based position of `l` in the spectrum.
  std::uint32_t spectrum_index(const Label& l) const;
  /// Universe index of an element; throws PreconditionError if absent.
  std::uint32_t element_index(const UniverseElement& e) const;
  /// "e(x,y,i)" or "p(x,t)".
  std::string token(std::uint32_t element) const;
  std::string token(const UniverseElement& e) const;
  /// Name of the k-subset vertex: "{tok,tok,...}" in universe order.
  std::string subset_name(std::span<const std::uint32_t> subset) const;

  nlohmann::json to_json() const;

  friend bool operator==(const SetAssignment&, const SetAssignment&) = default;
};

SetAssignment build_set_assignment(const EdgeLabelledGraph& a);

/// The k-subset graph over the universe of a SetAssignment, with the copy
/// of the input given by x -> psi(x).
class EppaGraph {
 public:
  EppaGraph(SetAssignment assignment, std::uint64_t vertex_cap);

  const EdgeLabelledGraph& graph() const { return graph_; }
  const SetAssignment& assignment() const { return assignment_; }
  /// Universe indices of vertex v, ascending.
  std::span<const std::uint32_t> subset(VertexIndex v) const { return subsets_[v]; }
  /// Input vertex -> graph vertex.
  const IndexMap& embedding() const { return embedding_; }
  /// Vertex whose subset is `subset` (any order); throws PreconditionError.
  VertexIndex vertex_of(std::vector<std::uint32_t> subset) const;

 private:
  SetAssignment assignment_;
  BinomialTable binom_;
  EdgeLabelledGraph graph_;
  std::vector<std::vector<std::uint32_t>> subsets_;
  std::vector<VertexIndex> by_rank_;
  IndexMap embedding_;
};

/// Throws CapExceeded (stage "level 2") if C(|U|, k) exceeds `vertex_cap`.
EppaGraph build_eppa_graph(const EdgeLabelledGraph& a, std::uint64_t vertex_cap = kDefaultVertexCap);

/// As a named map from the input graph into the subset graph.
PartialMap eppa_embedding(const EdgeLabelledGraph& a, const EppaGraph& b);

/// Permutation of the universe extending a partial automorphism `phi` of
/// the input graph (index form: phi[x] or kUnmapped). Pair tokens among
/// Dom(phi) follow phi; the rest of each psi(x) goes into psi(phi(x)); the
/// remainder is completed. In coherent mode each matching pairs free
/// sources and free targets in increasing universe order; otherwise free
/// targets are taken in decreasing order. Throws PreconditionError if phi
/// is not a partial automorphism.
std::vector<std::uint32_t> extend_by_permutation(const EdgeLabelledGraph& a,
                                                 const SetAssignment& sa, const IndexMap& phi,
                                                 bool coherent);

/// Named form: the result maps universe tokens to universe tokens.
PartialMap extend_by_permutation(const EdgeLabelledGraph& a, const SetAssignment& sa,
                                 const PartialMap& phi, bool coherent);

/// X -> pi(X) on the subset graph. Throws PreconditionError unless `pi` is a
/// permutation of the universe.
IndexMap subset_automorphism(const EppaGraph& b, std::span<const std::uint32_t> pi);
PartialMap subset_automorphism(const EppaGraph& b, const PartialMap& pi);

}  // namespace eppa
