#include "eppa/cycle_elimination.hpp"

#include <algorithm>
#include <numeric>

#include "eppa/errors.hpp"

namespace eppa {

bool BadSet::is_long_edge(VertexIndex x, VertexIndex y) const {
  return (x == cycle.long_u() && y == cycle.long_v()) || (x == cycle.long_v() && y == cycle.long_u());
}

std::vector<BadSet> bad_sets(const EdgeLabelledGraph& ci, std::size_t i) {
  if (i < 2) throw PreconditionError("levels start at 2");
  std::vector<BadSet> out;
  for (auto& c : find_induced_nonmetric_cycles(ci, i + 1)) out.push_back({c.members(), std::move(c)});
  return out;
}

namespace {

// Consecutive on the cycle, counting the closing long edge.
bool cycle_edge(const CycleWitness& c, VertexIndex x, VertexIndex y) {
  const auto& v = c.vertices;
  for (std::size_t j = 0; j < v.size(); ++j) {
    VertexIndex a = v[j], b = v[(j + 1) % v.size()];
    if ((a == x && b == y) || (a == y && b == x)) return true;
  }
  return false;
}

}  // namespace

std::vector<AnchorBit> anchor_valuations(const EdgeLabelledGraph& ci,
                                         const std::vector<VertexIndex>& copy,
                                         const std::vector<BadSet>& bad) {
  std::vector<bool> in_copy(ci.size(), false);
  for (auto v : copy) in_copy[v] = true;
  std::vector<AnchorBit> out;
  for (std::size_t m = 0; m < bad.size(); ++m) {
    std::vector<VertexIndex> meet;
    for (auto v : bad[m].members)
      if (in_copy[v]) meet.push_back(v);
    if (meet.empty()) continue;
    ensure(meet.size() <= 2, "bad set meets the copy of A in more than two vertices");
    if (meet.size() == 2) {
      ensure(cycle_edge(bad[m].cycle, meet[0], meet[1]),
             "bad set meets the copy of A in two vertices that are not a cycle edge");
      // members are ascending, so meet[0] is the canonically smaller vertex
      const std::uint8_t second = bad[m].is_long_edge(meet[0], meet[1]) ? 1 : 0;
      out.push_back({m, meet[0], 0});
      out.push_back({m, meet[1], second});
    } else {
      out.push_back({m, meet[0], 0});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

std::uint8_t LevelGraph::bit(VertexIndex v, std::size_t m) const {
  const auto& sets = bad_sets_of_[base_[v]];
  auto it = std::lower_bound(sets.begin(), sets.end(), m);
  ensure(it != sets.end() && *it == m, "bad set does not contain the vertex");
  return static_cast<std::uint8_t>((valuation_[v] >> (it - sets.begin())) & 1u);
}

VertexIndex LevelGraph::vertex_of(VertexIndex x, std::uint64_t valuation) const {
  ensure(x < offset_.size() && valuation < (std::uint64_t{1} << bad_sets_of_[x].size()),
         "no such (vertex, valuation) pair");
  return vertex_at_[offset_[x] + valuation];
}

std::optional<std::size_t> LevelGraph::find_bad_set(const std::vector<VertexIndex>& members) const {
  auto it = bad_index_.find(members);
  if (it == bad_index_.end()) return std::nullopt;
  return it->second;
}

LevelGraph LevelGraph::assemble(const EdgeLabelledGraph& ci, int level, std::vector<BadSet> bad,
                                std::vector<AnchorBit> anchors, const IndexMap& copy_in_ci,
                                std::uint64_t vertex_cap) {
  LevelGraph out;
  out.level_ = level;
  out.bad_sets_ = std::move(bad);
  out.anchors_ = std::move(anchors);
  const std::size_t n = ci.size();

  out.bad_sets_of_.assign(n, {});
  for (std::size_t m = 0; m < out.bad_sets_.size(); ++m) {
    out.bad_index_[out.bad_sets_[m].members] = m;
    for (auto v : out.bad_sets_[m].members) out.bad_sets_of_[v].push_back(static_cast<std::uint32_t>(m));
  }

  const std::string stage = "level " + std::to_string(level);
  std::uint64_t total = 0;
  out.offset_.assign(n, 0);
  for (VertexIndex x = 0; x < n; ++x) {
    const auto u = out.bad_sets_of_[x].size();
    if (u >= 63) throw CapExceeded(stage, kSaturated, vertex_cap);
    out.offset_[x] = total;
    total += std::uint64_t{1} << u;
    if (total > vertex_cap) throw CapExceeded(stage, total, vertex_cap);
  }

  // Names "(x|bits)", bit j written for the j-th bad set containing x.
  std::vector<VertexId> names;
  names.reserve(total);
  for (VertexIndex x = 0; x < n; ++x) {
    const auto u = out.bad_sets_of_[x].size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << u); ++mask) {
      std::string name = "(" + ci.name(x) + "|";
      for (std::size_t j = 0; j < u; ++j) name += ((mask >> j) & 1u) ? '1' : '0';
      name += ')';
      names.push_back(std::move(name));
    }
  }
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });
  out.vertex_at_.assign(total, kUnmapped);
  for (std::size_t v = 0; v < order.size(); ++v) out.vertex_at_[order[v]] = v;
  out.base_.assign(total, 0);
  out.valuation_.assign(total, 0);
  for (VertexIndex x = 0; x < n; ++x) {
    const auto u = out.bad_sets_of_[x].size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << u); ++mask) {
      const VertexIndex v = out.vertex_at_[out.offset_[x] + mask];
      out.base_[v] = x;
      out.valuation_[v] = mask;
    }
  }

  // Edge rule: d(x, y) in C_i, and for every common bad set M the bits
  // differ if {x, y} is M's long edge and agree otherwise.
  std::vector<IndexedEdge> edges;
  for (const auto& e : ci.edges()) {
    const auto& ux = out.bad_sets_of_[e.u];
    const auto& uy = out.bad_sets_of_[e.v];
    struct Common {
      std::size_t jx, jy;
      bool flip;
    };
    std::vector<Common> common;
    for (std::size_t a = 0, b = 0; a < ux.size() && b < uy.size();) {
      if (ux[a] < uy[b]) {
        ++a;
      } else if (uy[b] < ux[a]) {
        ++b;
      } else {
        common.push_back({a, b, out.bad_sets_[ux[a]].is_long_edge(e.u, e.v)});
        ++a;
        ++b;
      }
    }
    std::uint64_t fixed = 0;
    for (const auto& c : common) fixed |= std::uint64_t{1} << c.jy;
    const std::uint64_t all_y = (std::uint64_t{1} << uy.size()) - 1;
    const std::uint64_t free = all_y & ~fixed;
    for (std::uint64_t mx = 0; mx < (std::uint64_t{1} << ux.size()); ++mx) {
      std::uint64_t required = 0;
      for (const auto& c : common) {
        std::uint64_t bx = (mx >> c.jx) & 1u;
        required |= (c.flip ? bx ^ 1u : bx) << c.jy;
      }
      const VertexIndex from = out.vertex_at_[out.offset_[e.u] + mx];
      for (std::uint64_t sub = free;; sub = (sub - 1) & free) {
        edges.push_back({from, out.vertex_at_[out.offset_[e.v] + (required | sub)], e.label});
        if (sub == 0) break;
      }
    }
  }
  // Edge endpoints are sorted positions, so hand the names over sorted.
  std::vector<VertexId> sorted(total);
  for (std::size_t i = 0; i < total; ++i) sorted[out.vertex_at_[i]] = std::move(names[i]);
  out.graph_ = EdgeLabelledGraph(std::move(sorted), std::move(edges));

  // Copy of A: x -> (x, anchor bits on every bad set containing x).
  out.embedding_.assign(copy_in_ci.size(), kUnmapped);
  for (std::size_t a = 0; a < copy_in_ci.size(); ++a) {
    const VertexIndex x = copy_in_ci[a];
    const auto& sets = out.bad_sets_of_[x];
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      auto it = std::find_if(out.anchors_.begin(), out.anchors_.end(),
                             [&](const AnchorBit& b) { return b.bad_set == sets[j] && b.vertex == x; });
      ensure(it != out.anchors_.end(), "missing anchor bit for a bad set meeting the copy of A");
      mask |= std::uint64_t{it->bit} << j;
    }
    out.embedding_[a] = out.vertex_at_[out.offset_[x] + mask];
  }
  return out;
}

LevelGraph build_next_level(const EdgeLabelledGraph& ci, int i, const IndexMap& copy_in_ci,
                            std::uint64_t vertex_cap) {
  auto bad = bad_sets(ci, static_cast<std::size_t>(i));
  std::vector<VertexIndex> copy(copy_in_ci.begin(), copy_in_ci.end());
  auto anchors = anchor_valuations(ci, copy, bad);
  return LevelGraph::assemble(ci, i + 1, std::move(bad), std::move(anchors), copy_in_ci, vertex_cap);
}

// ---------------------------------------------------------------------------

nlohmann::json LevelGraph::to_json(const EdgeLabelledGraph& ci) const {
  nlohmann::json bad = nlohmann::json::array();
  for (const auto& m : bad_sets_) {
    nlohmann::json cycle = nlohmann::json::array();
    for (auto v : m.cycle.vertices) cycle.push_back(ci.name(v));
    bad.push_back({{"cycle", std::move(cycle)}});
  }
  nlohmann::json anchors = nlohmann::json::array();
  for (const auto& b : anchors_)
    anchors.push_back({{"bad_set", b.bad_set}, {"vertex", ci.name(b.vertex)}, {"bit", b.bit}});
  return {{"level", level_}, {"bad_sets", std::move(bad)}, {"anchors", std::move(anchors)},
          {"vertex_count", graph_.size()}};
}

LevelGraph LevelGraph::from_json(const nlohmann::json& doc, const EdgeLabelledGraph& ci,
                                 const IndexMap& copy_in_ci, std::uint64_t vertex_cap) {
  try {
    const int level = doc.at("level").get<int>();
    const std::string where = "level " + std::to_string(level);
    std::vector<BadSet> bad;
    const auto& bs = doc.at("bad_sets");
    for (std::size_t m = 0; m < bs.size(); ++m) {
      const auto& names = bs[m].at("cycle");
      BadSet b;
      if (names.size() < 3) throw FormatError(where + ": bad set " + std::to_string(m) + " too small");
      for (const auto& nm : names) {
        auto idx = ci.find(nm.get<std::string>());
        if (!idx) throw FormatError(where + ": unknown vertex in bad set " + std::to_string(m));
        b.cycle.vertices.push_back(*idx);
      }
      const auto& cv = b.cycle.vertices;
      Label others;
      for (std::size_t j = 0; j + 1 < cv.size(); ++j) {
        auto l = ci.label(cv[j], cv[j + 1]);
        if (!l) throw FormatError(where + ": bad set " + std::to_string(m) + " is not a cycle");
        others += *l;
      }
      auto closing = ci.label(cv.front(), cv.back());
      if (!closing || cv.front() >= cv.back())
        throw FormatError(where + ": bad set " + std::to_string(m) + " has no valid long edge");
      b.cycle.deficit = *closing - others;
      b.members = b.cycle.members();
      if (std::adjacent_find(b.members.begin(), b.members.end()) != b.members.end())
        throw FormatError(where + ": bad set " + std::to_string(m) + " repeats a vertex");
      if (!bad.empty() && !(bad.back().members < b.members))
        throw FormatError(where + ": bad sets not in canonical order");
      bad.push_back(std::move(b));
    }
    std::vector<AnchorBit> anchors;
    for (const auto& a : doc.at("anchors")) {
      AnchorBit b;
      b.bad_set = a.at("bad_set").get<std::size_t>();
      auto idx = ci.find(a.at("vertex").get<std::string>());
      const int bit = a.at("bit").get<int>();
      if (!idx || b.bad_set >= bad.size() || (bit != 0 && bit != 1))
        throw FormatError(where + ": malformed anchor entry");
      b.vertex = *idx;
      b.bit = static_cast<std::uint8_t>(bit);
      const auto& mem = bad[b.bad_set].members;
      if (!std::binary_search(mem.begin(), mem.end(), b.vertex))
        throw FormatError(where + ": anchor vertex outside its bad set");
      anchors.push_back(b);
    }
    std::sort(anchors.begin(), anchors.end());
    try {
      return assemble(ci, level, std::move(bad), std::move(anchors), copy_in_ci, vertex_cap);
    } catch (const InvariantViolation& ex) {
      throw FormatError(where + ": " + ex.what());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("level: ") + ex.what());
  }
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> compute_flip_set(const LevelGraph& next, const IndexMap& phi,
                                          const IndexMap& hat_phi) {
  const auto& emb = next.embedding();
  // verdict per bad set: -1 unknown, 0 kept, 1 flipped
  std::vector<int> verdict(next.bad_sets().size(), -1);
  for (std::size_t a = 0; a < emb.size(); ++a) {
    const VertexIndex source = emb[a];
    if (phi[source] == kUnmapped) continue;
    const VertexIndex target = phi[source];
    const VertexIndex x = next.base(source);
    const VertexIndex y = next.base(target);
    ensure(hat_phi[x] == y, "hat_phi does not extend the projected map");
    for (auto m : next.bad_sets_of(x)) {
      std::vector<VertexIndex> image;
      for (auto v : next.bad_sets()[m].members) image.push_back(hat_phi[v]);
      std::sort(image.begin(), image.end());
      auto m2 = next.find_bad_set(image);
      ensure(m2.has_value(), "hat_phi maps a bad set to a non-bad set");
      const int flipped = next.bit(source, m) != next.bit(target, *m2) ? 1 : 0;
      ensure(verdict[m] == -1 || verdict[m] == flipped, "flip set is ill-defined");
      verdict[m] = flipped;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < verdict.size(); ++m)
    if (verdict[m] == 1) out.push_back(m);
  return out;
}

IndexMap lift_automorphism(const EdgeLabelledGraph& ci, const LevelGraph& next,
                           const IndexMap& hat_phi, const std::vector<std::size_t>& flips) {
  if (!is_automorphism(hat_phi, ci)) throw PreconditionError("hat_phi is not an automorphism of C_i");
  const auto& bad = next.bad_sets();
  std::vector<std::size_t> image_of(bad.size());
  std::vector<std::uint8_t> flip(bad.size(), 0);
  for (auto m : flips) {
    if (m >= bad.size()) throw PreconditionError("flip set names an unknown bad set");
    flip[m] = 1;
  }
  for (std::size_t m = 0; m < bad.size(); ++m) {
    std::vector<VertexIndex> image;
    for (auto v : bad[m].members) image.push_back(hat_phi[v]);
    std::sort(image.begin(), image.end());
    auto m2 = next.find_bad_set(image);
    ensure(m2.has_value(), "hat_phi maps a bad set to a non-bad set");
    ensure(bad[*m2].is_long_edge(hat_phi[bad[m].cycle.long_u()], hat_phi[bad[m].cycle.long_v()]),
           "hat_phi does not preserve a long edge");
    image_of[m] = *m2;
  }

  const auto& g = next.graph();
  IndexMap theta(g.size(), kUnmapped);
  for (VertexIndex v = 0; v < g.size(); ++v) {
    const VertexIndex x = next.base(v);
    const VertexIndex y = hat_phi[x];
    const auto& ux = next.bad_sets_of(x);
    const auto& uy = next.bad_sets_of(y);
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < ux.size(); ++j) {
      const auto m = ux[j];
      auto it = std::lower_bound(uy.begin(), uy.end(), image_of[m]);
      ensure(it != uy.end() && *it == image_of[m], "image bad set missing at the image vertex");
      const std::uint64_t b = ((next.valuation(v) >> j) & 1u) ^ flip[m];
      mask |= b << (it - uy.begin());
    }
    theta[v] = next.vertex_of(y, mask);
  }
  ensure(is_automorphism(theta, g), "lifted map is not an automorphism");
  return theta;
}

}  // namespace eppa
