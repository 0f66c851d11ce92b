#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eppa/completion.hpp"
#include "eppa/cycle_elimination.hpp"
#include "eppa/graph.hpp"
#include "eppa/set_representation.hpp"

namespace eppa {

struct WitnessConfig {
  std::uint64_t vertex_cap = kDefaultVertexCap;
  std::uint64_t search_budget = kDefaultSearchBudget;
  bool coherent = true;
  friend bool operator==(const WitnessConfig&, const WitnessConfig&) = default;
};

/// The whole tower C_2..C_N for one input, plus the completed component
/// of C_N that holds the copy of A. Enough to replay extensions.
struct Witness {
  EdgeLabelledGraph input;
  WitnessConfig config;
  int top_level = 2;                // N
  std::optional<EppaGraph> base;    // C_2; absent for inputs with fewer than two vertices
  std::vector<LevelGraph> levels;   // C_3 .. C_N
  std::vector<VertexIndex> component;  // vertices of C_N, ascending
  EdgeLabelledGraph final;
  IndexMap final_embedding;         // input vertex -> vertex of final

  bool degenerate() const { return !base.has_value(); }
  /// C_i for 2 <= i <= N.
  const EdgeLabelledGraph& level_graph(int i) const;
  /// Copy of A inside C_i.
  const IndexMap& level_embedding(int i) const;
};

/// floor(max distance / min distance) + 1; 2 for a single point. Throws
/// PreconditionError unless `a` is a metric space.
int compute_N(const EdgeLabelledGraph& a);

/// Throws PreconditionError unless `a` is a metric space, CapExceeded (with
/// the failing stage) when a level outgrows the vertex cap.
Witness build_witness(const EdgeLabelledGraph& a, const WitnessConfig& config = {});

/// Automorphisms of C_2, C_3, ..., C_N extending a partial automorphism
/// `phi` of the input (index form over input vertices).
std::vector<IndexMap> extend_through_levels(const Witness& w, const IndexMap& phi);

/// Total isometry of w.final extending `phi`, a partial isometry of the
/// copy of A in w.final (index form over w.final's vertices). Throws
/// PreconditionError when phi is not such a map.
IndexMap extend_isometry(const Witness& w, const IndexMap& phi);
PartialMap extend_isometry(const Witness& w, const PartialMap& phi);

/// The copy of A in w.final, ascending.
std::vector<VertexIndex> final_copy(const Witness& w);

struct LevelStats {
  int level;
  std::size_t vertices;
  std::size_t edges;
  std::size_t bad_sets;        // bad sets of the level below unwound here
  std::size_t max_valuation_bits;
};

struct WitnessStats {
  int top_level;
  std::vector<LevelStats> levels;
  std::size_t component_size;
  std::size_t final_vertices;
  std::size_t final_edges;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

WitnessStats witness_stats(const Witness& w);

inline constexpr int kWitnessFormatVersion = 1;

nlohmann::json witness_to_json(const Witness& w);
/// Rebuilds every level from the recorded data. Throws FormatError on
/// structurally invalid documents; content that merely disagrees with the
/// construction loads and is left for the verifier to reject.
Witness witness_from_json(const nlohmann::json& doc);

}  // namespace eppa
