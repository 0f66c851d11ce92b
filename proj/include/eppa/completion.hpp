#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eppa/graph.hpp"

namespace eppa {

/// A cycle x_1 .. x_n of a host graph whose closing edge {x_1, x_n} is its
/// long edge: its label exceeds the sum of all other labels on the cycle by
/// `deficit`. Vertices are listed starting at the smaller long-edge
/// endpoint, so the long edge is always {vertices.front(), vertices.back()}.
struct CycleWitness {
  std::vector<VertexIndex> vertices;
  Label deficit;

  VertexIndex long_u() const { return vertices.front(); }
  VertexIndex long_v() const { return vertices.back(); }
  /// Members in ascending order.
  std::vector<VertexIndex> members() const;

  friend bool operator==(const CycleWitness&, const CycleWitness&) = default;
};

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

/// Throws PreconditionError on the empty graph.
bool is_connected(const EdgeLabelledGraph& g);

/// Vertices reachable from `start`, ascending.
std::vector<VertexIndex> connected_component(const EdgeLabelledGraph& g, VertexIndex start);

/// Complete graph on the same vertices labelled by shortest-path length.
/// Throws PreconditionError if g is empty or disconnected.
EdgeLabelledGraph shortest_path_completion(const EdgeLabelledGraph& g);

/// Every vertex set of the given size inducing a non-metric cycle, reported
/// once each, ordered by sorted member list. `size` must be at least 3.
std::vector<CycleWitness> find_induced_nonmetric_cycles(const EdgeLabelledGraph& g,
                                                        std::size_t size);

/// Some non-metric cycle (induced or not) on at most `max_vertices`
/// vertices. Absence is exhaustive. The search visits at most `budget`
/// path nodes and throws BudgetExhausted rather than answer "absent"
/// when it runs out.
std::optional<CycleWitness> has_nonmetric_cycle_up_to(const EdgeLabelledGraph& g,
                                                      std::size_t max_vertices,
                                                      std::uint64_t budget = kDefaultSearchBudget);

}  // namespace eppa
