#include "eppa/set_representation.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "eppa/combinatorics.hpp"
#include "eppa/errors.hpp"

namespace eppa {

std::uint32_t SetAssignment::spectrum_index(const Label& l) const {
  auto it = std::lower_bound(spectrum.begin(), spectrum.end(), l);
  if (it == spectrum.end() || *it != l)
    throw PreconditionError("label " + l.to_string() + " is not in the spectrum");
  return static_cast<std::uint32_t>(it - spectrum.begin()) + 1;
}

std::uint32_t SetAssignment::element_index(const UniverseElement& e) const {
  auto it = std::lower_bound(universe.begin(), universe.end(), e);
  if (it == universe.end() || *it != e) throw PreconditionError("element not in universe");
  return static_cast<std::uint32_t>(it - universe.begin());
}

std::string SetAssignment::token(const UniverseElement& e) const {
  if (e.kind == UniverseElement::Kind::pair)
    return "e(" + vertex_names[e.x] + "," + vertex_names[e.y] + "," + std::to_string(e.index) + ")";
  return "p(" + vertex_names[e.x] + "," + std::to_string(e.index) + ")";
}

std::string SetAssignment::token(std::uint32_t element) const { return token(universe[element]); }

std::string SetAssignment::subset_name(std::span<const std::uint32_t> subset) const {
  std::string out = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ',';
    out += token(subset[i]);
  }
  out += '}';
  return out;
}

nlohmann::json SetAssignment::to_json() const {
  nlohmann::json spec = nlohmann::json::array();
  for (const auto& l : spectrum) spec.push_back(l.to_string());
  nlohmann::json uni = nlohmann::json::array();
  for (std::uint32_t e = 0; e < universe.size(); ++e) uni.push_back(token(e));
  nlohmann::json sets = nlohmann::json::object();
  for (std::size_t x = 0; x < psi.size(); ++x) {
    nlohmann::json members = nlohmann::json::array();
    for (auto e : psi[x]) members.push_back(token(e));
    sets[vertex_names[x]] = std::move(members);
  }
  return {{"k", k}, {"spectrum", spec}, {"universe", uni}, {"psi", sets}};
}

SetAssignment build_set_assignment(const EdgeLabelledGraph& a) {
  if (a.empty()) throw PreconditionError("set assignment needs at least one vertex");
  SetAssignment sa;
  sa.vertex_names = a.vertices();
  sa.spectrum = a.spectrum();

  const std::size_t n = a.size();
  std::vector<std::uint32_t> load(n, 0);
  std::vector<UniverseElement> elements;
  for (const auto& e : a.edges()) {
    const std::uint32_t j = sa.spectrum_index(e.label);
    for (std::uint32_t i = 1; i <= j; ++i)
      elements.push_back({UniverseElement::Kind::pair, e.u, e.v, i});
    load[e.u] += j;
    load[e.v] += j;
  }
  // One private padding token at least, so distinct vertices get distinct sets.
  sa.k = 1 + *std::max_element(load.begin(), load.end());
  for (VertexIndex x = 0; x < n; ++x)
    for (std::uint32_t t = 1; t <= sa.k - load[x]; ++t)
      elements.push_back({UniverseElement::Kind::padding, x, x, t});
  std::sort(elements.begin(), elements.end());
  sa.universe = std::move(elements);

  sa.psi.assign(n, {});
  for (std::uint32_t idx = 0; idx < sa.universe.size(); ++idx) {
    const auto& e = sa.universe[idx];
    sa.psi[e.x].push_back(idx);
    if (e.kind == UniverseElement::Kind::pair) sa.psi[e.y].push_back(idx);
  }
  for (auto& s : sa.psi) std::sort(s.begin(), s.end());
  return sa;
}

// ---------------------------------------------------------------------------

EppaGraph::EppaGraph(SetAssignment assignment, std::uint64_t vertex_cap)
    : assignment_(std::move(assignment)), binom_(assignment_.universe.size(), assignment_.k) {
  const auto usize = static_cast<std::uint32_t>(assignment_.universe.size());
  const std::uint32_t k = assignment_.k;
  const std::uint64_t count = binomial(usize, k);
  if (count > vertex_cap) throw CapExceeded("level 2", count, vertex_cap);

  auto subsets = k_subsets(usize, k);
  std::vector<std::string> names;
  names.reserve(subsets.size());
  for (const auto& s : subsets) names.push_back(assignment_.subset_name(s));

  // Canonical vertex order is name order.
  std::vector<std::size_t> order(subsets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });

  std::vector<VertexId> sorted_names;
  sorted_names.reserve(order.size());
  subsets_.reserve(order.size());
  by_rank_.assign(subsets.size(), kUnmapped);
  for (std::size_t v = 0; v < order.size(); ++v) {
    sorted_names.push_back(std::move(names[order[v]]));
    subsets_.push_back(std::move(subsets[order[v]]));
    by_rank_[colex_rank(subsets_.back(), binom_)] = v;
  }

  // Bitsets for fast intersection sizes.
  const std::size_t words = (usize + 63) / 64;
  std::vector<std::uint64_t> bits(subsets_.size() * std::max<std::size_t>(words, 1), 0);
  for (std::size_t v = 0; v < subsets_.size(); ++v)
    for (auto e : subsets_[v]) bits[v * words + e / 64] |= std::uint64_t{1} << (e % 64);

  const auto& spectrum = assignment_.spectrum;
  std::vector<IndexedEdge> edges;
  for (std::size_t u = 0; u < subsets_.size(); ++u)
    for (std::size_t v = u + 1; v < subsets_.size(); ++v) {
      std::size_t common = 0;
      for (std::size_t w = 0; w < words; ++w)
        common += static_cast<std::size_t>(std::popcount(bits[u * words + w] & bits[v * words + w]));
      if (common >= 1 && common <= spectrum.size()) edges.push_back({u, v, spectrum[common - 1]});
    }
  graph_ = EdgeLabelledGraph(std::move(sorted_names), std::move(edges));

  embedding_.assign(assignment_.psi.size(), kUnmapped);
  for (std::size_t x = 0; x < assignment_.psi.size(); ++x) embedding_[x] = vertex_of(assignment_.psi[x]);
}

VertexIndex EppaGraph::vertex_of(std::vector<std::uint32_t> subset) const {
  std::sort(subset.begin(), subset.end());
  const auto usize = assignment_.universe.size();
  if (subset.size() != assignment_.k ||
      std::adjacent_find(subset.begin(), subset.end()) != subset.end() ||
      (!subset.empty() && subset.back() >= usize))
    throw PreconditionError("not a k-subset of the universe");
  return by_rank_[colex_rank(subset, binom_)];
}

EppaGraph build_eppa_graph(const EdgeLabelledGraph& a, std::uint64_t vertex_cap) {
  return EppaGraph(build_set_assignment(a), vertex_cap);
}

PartialMap eppa_embedding(const EdgeLabelledGraph& a, const EppaGraph& b) {
  return to_partial_map(b.embedding(), a, b.graph());
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> extend_by_permutation(const EdgeLabelledGraph& a,
                                                 const SetAssignment& sa, const IndexMap& phi,
                                                 bool coherent) {
  if (phi.size() != a.size() || !is_partial_automorphism(phi, a))
    throw PreconditionError("map is not a partial automorphism of the input graph");
  constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
  const auto usize = static_cast<std::uint32_t>(sa.universe.size());
  std::vector<std::uint32_t> pi(usize, kFree);
  std::vector<bool> taken(usize, false);

  auto assign = [&](std::uint32_t from, std::uint32_t to) {
    ensure(pi[from] == kFree && !taken[to], "universe element assigned twice");
    pi[from] = to;
    taken[to] = true;
  };
  // Matches free sources to free targets (both ascending).
  auto match = [&](const std::vector<std::uint32_t>& sources, std::vector<std::uint32_t> targets) {
    ensure(sources.size() == targets.size(), "free source and target counts differ");
    if (!coherent) std::reverse(targets.begin(), targets.end());
    for (std::size_t i = 0; i < sources.size(); ++i) assign(sources[i], targets[i]);
  };

  // Step 1: shared pair tokens follow the map.
  for (VertexIndex x = 0; x < a.size(); ++x) {
    if (phi[x] == kUnmapped) continue;
    for (const auto& nb : a.neighbors(x)) {
      const VertexIndex y = nb.vertex;
      if (y <= x || phi[y] == kUnmapped) continue;
      const VertexIndex fx = std::min(phi[x], phi[y]);
      const VertexIndex fy = std::max(phi[x], phi[y]);
      const std::uint32_t j = sa.spectrum_index(nb.label);
      for (std::uint32_t i = 1; i <= j; ++i)
        assign(sa.element_index({UniverseElement::Kind::pair, x, y, i}),
               sa.element_index({UniverseElement::Kind::pair, fx, fy, i}));
    }
  }
  // Step 2: the rest of psi(x) goes into psi(phi(x)).
  for (VertexIndex x = 0; x < a.size(); ++x) {
    if (phi[x] == kUnmapped) continue;
    std::vector<std::uint32_t> sources, targets;
    for (auto e : sa.psi[x])
      if (pi[e] == kFree) sources.push_back(e);
    for (auto e : sa.psi[phi[x]])
      if (!taken[e]) targets.push_back(e);
    match(sources, std::move(targets));
  }
  // Step 3: complete to a permutation.
  std::vector<std::uint32_t> sources, targets;
  for (std::uint32_t e = 0; e < usize; ++e) {
    if (pi[e] == kFree) sources.push_back(e);
    if (!taken[e]) targets.push_back(e);
  }
  match(sources, std::move(targets));
  return pi;
}

PartialMap extend_by_permutation(const EdgeLabelledGraph& a, const SetAssignment& sa,
                                 const PartialMap& phi, bool coherent) {
  const auto pi = extend_by_permutation(a, sa, to_index_map(phi, a, a), coherent);
  std::vector<PartialMap::Pair> pairs;
  pairs.reserve(pi.size());
  for (std::uint32_t e = 0; e < pi.size(); ++e) pairs.emplace_back(sa.token(e), sa.token(pi[e]));
  return PartialMap(std::move(pairs));
}

IndexMap subset_automorphism(const EppaGraph& b, std::span<const std::uint32_t> pi) {
  const auto usize = b.assignment().universe.size();
  if (pi.size() != usize) throw PreconditionError("permutation has the wrong size");
  std::vector<bool> hit(usize, false);
  for (auto t : pi) {
    if (t >= usize || hit[t]) throw PreconditionError("not a permutation of the universe");
    hit[t] = true;
  }
  const auto& g = b.graph();
  IndexMap out(g.size(), kUnmapped);
  std::vector<std::uint32_t> image;
  for (VertexIndex v = 0; v < g.size(); ++v) {
    image.clear();
    for (auto e : b.subset(v)) image.push_back(pi[e]);
    out[v] = b.vertex_of(image);
  }
  return out;
}

PartialMap subset_automorphism(const EppaGraph& b, const PartialMap& pi) {
  const auto& sa = b.assignment();
  std::vector<std::string> tokens;
  tokens.reserve(sa.universe.size());
  for (std::uint32_t e = 0; e < sa.universe.size(); ++e) tokens.push_back(sa.token(e));
  std::vector<std::size_t> order(tokens.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return tokens[x] < tokens[y]; });
  auto lookup = [&](const std::string& t) -> std::uint32_t {
    auto it = std::lower_bound(order.begin(), order.end(), t,
                               [&](std::size_t i, const std::string& key) { return tokens[i] < key; });
    if (it == order.end() || tokens[*it] != t)
      throw PreconditionError("unknown universe token '" + t + "'");
    return static_cast<std::uint32_t>(*it);
  };
  if (pi.size() != tokens.size()) throw PreconditionError("permutation is not total on the universe");
  std::vector<std::uint32_t> index_pi(tokens.size(), 0);
  for (const auto& [from, to] : pi.pairs()) index_pi[lookup(from)] = lookup(to);
  const auto m = subset_automorphism(b, index_pi);
  return to_partial_map(m, b.graph(), b.graph());
}

}  // namespace eppa
