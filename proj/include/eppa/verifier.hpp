#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eppa/graph.hpp"

namespace eppa {

struct Witness;

// Brute-force checks that only read graphs through their public accessors.
// No verdict here depends on the construction code, except that
// cross_check compares against it.

struct CheckResult {
  std::string name;
  bool passed = true;
  nlohmann::json counterexample;  // null when passed
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::uint64_t maps_examined = 0;
  std::uint64_t search_nodes = 0;
  bool budget_exhausted = false;

  bool passed() const;
  const CheckResult* first_failure() const;
  void add(std::string name, bool passed, nlohmann::json counterexample = nullptr);
  nlohmann::json to_json() const;
  std::string to_text() const;
};

enum class SearchStatus { found, absent, exhausted };

struct SearchResult {
  SearchStatus status = SearchStatus::absent;
  IndexMap extension;  // total when found
  std::uint64_t nodes = 0;
};

/// True iff f is a total bijection of b preserving labels and non-edges.
bool verifier_is_automorphism(const EdgeLabelledGraph& b, const IndexMap& f);
/// True iff f is injective and preserves labels and non-edges on its domain.
bool verifier_is_partial_automorphism(const EdgeLabelledGraph& b, const IndexMap& f);

/// Lexicographically least automorphism of b extending phi (index form,
/// kUnmapped outside the domain), by backtracking in vertex order with
/// forward checking. `budget` bounds the number of search nodes. Throws
/// PreconditionError if phi is not a partial automorphism of b.
SearchResult search_extension(const EdgeLabelledGraph& b, const IndexMap& phi,
                              std::uint64_t budget);
std::optional<PartialMap> search_extension(const EdgeLabelledGraph& b, const PartialMap& phi,
                                           std::uint64_t budget, SearchStatus* status = nullptr);

/// All partial automorphisms of the subgraph of b induced on `copy`, as
/// index maps over b.
std::vector<IndexMap> verifier_partial_automorphisms(const EdgeLabelledGraph& b,
                                                     const std::vector<VertexIndex>& copy);

/// Every partial automorphism of b restricted to `copy` extends to an
/// automorphism of b.
VerificationReport verify_eppa(const EdgeLabelledGraph& b, const std::vector<VertexIndex>& copy,
                               std::uint64_t budget);

/// Some triple violating the triangle inequality, or a missing pair
/// reported as {x, y, x}.
std::optional<std::vector<VertexIndex>> verifier_metric_violation(const EdgeLabelledGraph& g);

/// Some cycle of at most `max_vertices` vertices whose closing edge (first
/// to last vertex) is longer than the rest of the cycle. Sets `exhausted`
/// and returns nullopt when the budget runs out.
std::optional<std::vector<VertexIndex>> verifier_nonmetric_cycle(const EdgeLabelledGraph& g,
                                                                 std::size_t max_vertices,
                                                                 std::uint64_t budget,
                                                                 bool& exhausted);

/// Checks one step of the tower: `projection` maps the upper graph to the
/// lower one preserving labels, the upper copy projects onto the lower copy
/// and is isometric to `a`, and the upper graph has no non-metric cycle on
/// at most `upper_level` vertices.
void verify_level(VerificationReport& report, int upper_level, const EdgeLabelledGraph& a,
                  const EdgeLabelledGraph& lower, const IndexMap& lower_copy,
                  const EdgeLabelledGraph& upper, const IndexMap& upper_copy,
                  const std::vector<VertexIndex>& projection, std::uint64_t budget);

/// Re-derives what can be checked about a witness from its stored graphs,
/// compares it with a fresh construction, and runs every partial isometry
/// of the copy through extend_isometry and search_extension.
VerificationReport cross_check(const Witness& w, std::uint64_t budget);

}  // namespace eppa
