#include "eppa/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "eppa/errors.hpp"
#include "eppa/graph_io.hpp"

namespace eppa {

const EdgeLabelledGraph& Witness::level_graph(int i) const {
  if (degenerate()) {
    ensure(i == 2, "degenerate witness has only level 2");
    return input;
  }
  if (i == 2) return base->graph();
  ensure(i >= 3 && i - 3 < static_cast<int>(levels.size()), "no such level");
  return levels[static_cast<std::size_t>(i - 3)].graph();
}

const IndexMap& Witness::level_embedding(int i) const {
  if (degenerate()) {
    ensure(i == 2, "degenerate witness has only level 2");
    return final_embedding;
  }
  if (i == 2) return base->embedding();
  ensure(i >= 3 && i - 3 < static_cast<int>(levels.size()), "no such level");
  return levels[static_cast<std::size_t>(i - 3)].embedding();
}

int compute_N(const EdgeLabelledGraph& a) {
  if (!is_metric_space(a)) throw PreconditionError("input is not a metric space");
  if (a.size() < 2) return 2;
  const auto spectrum = a.spectrum();
  const Label ratio = spectrum.back() / spectrum.front();
  return static_cast<int>(ratio.floor()) + 1;
}

Witness build_witness(const EdgeLabelledGraph& a, const WitnessConfig& config) {
  Witness w;
  w.input = a;
  w.config = config;
  w.top_level = compute_N(a);
  if (a.size() < 2) {
    w.final = a;
    w.final_embedding.resize(a.size());
    for (VertexIndex v = 0; v < a.size(); ++v) w.final_embedding[v] = v;
    for (VertexIndex v = 0; v < a.size(); ++v) w.component.push_back(v);
    return w;
  }

  w.base.emplace(build_set_assignment(a), config.vertex_cap);
  for (int i = 2; i < w.top_level; ++i)
    w.levels.push_back(build_next_level(w.level_graph(i), i, w.level_embedding(i), config.vertex_cap));

  const auto& top = w.level_graph(w.top_level);
  const auto& copy = w.level_embedding(w.top_level);
  w.component = connected_component(top, copy.front());
  for (auto v : copy)
    ensure(std::binary_search(w.component.begin(), w.component.end(), v),
           "copy of A is not inside one component");
  w.final = shortest_path_completion(induced_subgraph(top, std::span<const VertexIndex>(w.component)));
  w.final_embedding.clear();
  for (auto v : copy)
    w.final_embedding.push_back(static_cast<VertexIndex>(
        std::lower_bound(w.component.begin(), w.component.end(), v) - w.component.begin()));
  return w;
}

std::vector<VertexIndex> final_copy(const Witness& w) {
  std::vector<VertexIndex> out(w.final_embedding.begin(), w.final_embedding.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IndexMap> extend_through_levels(const Witness& w, const IndexMap& phi) {
  const auto& a = w.input;
  if (phi.size() != a.size() || !is_partial_automorphism(phi, a))
    throw PreconditionError("map is not a partial automorphism of the input");
  std::vector<IndexMap> out;
  if (w.degenerate()) {
    IndexMap id(a.size());
    for (VertexIndex v = 0; v < a.size(); ++v) id[v] = v;
    out.push_back(std::move(id));
    return out;
  }
  const auto pi = extend_by_permutation(a, w.base->assignment(), phi, w.config.coherent);
  out.push_back(subset_automorphism(*w.base, pi));
  for (std::size_t l = 0; l < w.levels.size(); ++l) {
    const auto& next = w.levels[l];
    const int i = next.level() - 1;
    IndexMap lifted(next.graph().size(), kUnmapped);
    const auto& emb = next.embedding();
    for (VertexIndex x = 0; x < a.size(); ++x)
      if (phi[x] != kUnmapped) lifted[emb[x]] = emb[phi[x]];
    const auto flips = compute_flip_set(next, lifted, out.back());
    out.push_back(lift_automorphism(w.level_graph(i), next, out.back(), flips));
  }
  return out;
}

IndexMap extend_isometry(const Witness& w, const IndexMap& phi) {
  const auto& final = w.final;
  if (phi.size() != final.size()) throw PreconditionError("map does not match the final space");
  // Pull phi back to the input through the copy.
  std::vector<VertexIndex> to_input(final.size(), kUnmapped);
  for (VertexIndex x = 0; x < w.final_embedding.size(); ++x) to_input[w.final_embedding[x]] = x;
  IndexMap on_input(w.input.size(), kUnmapped);
  for (VertexIndex v = 0; v < final.size(); ++v) {
    if (phi[v] == kUnmapped) continue;
    if (phi[v] >= final.size() || to_input[v] == kUnmapped || to_input[phi[v]] == kUnmapped)
      throw PreconditionError("not a partial isometry of the copy: leaves the copy of A");
    on_input[to_input[v]] = to_input[phi[v]];
  }
  if (!is_partial_automorphism(phi, final))
    throw PreconditionError("not a partial isometry of the copy: distances not preserved");

  const auto chain = extend_through_levels(w, on_input);
  const auto& top = chain.back();
  IndexMap out(final.size(), kUnmapped);
  if (w.degenerate()) {
    out = top;
  } else {
    for (VertexIndex p = 0; p < w.component.size(); ++p) {
      const VertexIndex image = top[w.component[p]];
      auto it = std::lower_bound(w.component.begin(), w.component.end(), image);
      ensure(it != w.component.end() && *it == image, "extension leaves the component of A");
      out[p] = static_cast<VertexIndex>(it - w.component.begin());
    }
  }
  ensure(is_automorphism(out, final), "extension is not an isometry of the completion");
  for (VertexIndex v = 0; v < final.size(); ++v)
    ensure(phi[v] == kUnmapped || out[v] == phi[v], "extension disagrees with the partial map");
  return out;
}

PartialMap extend_isometry(const Witness& w, const PartialMap& phi) {
  return to_partial_map(extend_isometry(w, to_index_map(phi, w.final, w.final)), w.final, w.final);
}

// ---------------------------------------------------------------------------

WitnessStats witness_stats(const Witness& w) {
  WitnessStats s;
  s.top_level = w.top_level;
  if (!w.degenerate()) {
    const auto& g = w.base->graph();
    s.levels.push_back({2, g.size(), g.edge_count(), 0, 0});
    for (const auto& l : w.levels) {
      std::size_t bits = 0;
      for (VertexIndex x = 0; x < l.base_size(); ++x) bits = std::max(bits, l.bad_sets_of(x).size());
      s.levels.push_back({l.level(), l.graph().size(), l.graph().edge_count(), l.bad_sets().size(), bits});
    }
  } else {
    s.levels.push_back({2, w.input.size(), w.input.edge_count(), 0, 0});
  }
  s.component_size = w.component.size();
  s.final_vertices = w.final.size();
  s.final_edges = w.final.edge_count();
  return s;
}

nlohmann::json WitnessStats::to_json() const {
  nlohmann::json lv = nlohmann::json::array();
  for (const auto& l : levels)
    lv.push_back({{"level", l.level},
                  {"vertices", l.vertices},
                  {"edges", l.edges},
                  {"bad_sets", l.bad_sets},
                  {"max_valuation_bits", l.max_valuation_bits}});
  return {{"N", top_level},
          {"levels", std::move(lv)},
          {"component_size", component_size},
          {"final_vertices", final_vertices},
          {"final_edges", final_edges}};
}

std::string WitnessStats::to_text() const {
  std::ostringstream os;
  os << "N = " << top_level << '\n';
  for (const auto& l : levels) {
    os << "C_" << l.level << ": " << l.vertices << " vertices, " << l.edges << " edges";
    if (l.level > 2)
      os << ", " << l.bad_sets << " bad sets unwound, max " << l.max_valuation_bits
         << " valuation bits";
    os << '\n';
  }
  os << "component: " << component_size << " vertices\n";
  os << "final: " << final_vertices << " vertices, " << final_edges << " edges\n";
  return os.str();
}

// ---------------------------------------------------------------------------

nlohmann::json witness_to_json(const Witness& w) {
  nlohmann::json doc;
  doc["format_version"] = kWitnessFormatVersion;
  doc["config"] = {{"vertex_cap", w.config.vertex_cap},
                   {"search_budget", w.config.search_budget},
                   {"coherent", w.config.coherent}};
  doc["N"] = w.top_level;
  doc["input"] = graph_to_json(w.input);
  doc["level2"] = w.degenerate() ? nlohmann::json(nullptr) : w.base->assignment().to_json();
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : w.levels) levels.push_back(l.to_json(w.level_graph(l.level() - 1)));
  doc["levels"] = std::move(levels);

  const auto& top = w.level_graph(w.top_level);
  nlohmann::json comp = nlohmann::json::array();
  for (auto v : w.component) comp.push_back(top.name(v));
  doc["component"] = std::move(comp);

  // The final space is complete; edges reference vertices by position.
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : w.final.edges()) edges.push_back({e.u, e.v, e.label.to_string()});
  doc["final"] = {{"vertices", w.final.vertices()}, {"edges", std::move(edges)}};

  nlohmann::json emb = nlohmann::json::array();
  for (VertexIndex a = 0; a < w.final_embedding.size(); ++a)
    emb.push_back({w.input.name(a), w.final.name(w.final_embedding[a])});
  doc["final_embedding"] = std::move(emb);
  return doc;
}

Witness witness_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw FormatError("witness: expected an object");
    if (doc.at("format_version").get<int>() != kWitnessFormatVersion)
      throw FormatError("witness: unsupported format_version");
    Witness w;
    const auto& cfg = doc.at("config");
    w.config.vertex_cap = cfg.at("vertex_cap").get<std::uint64_t>();
    w.config.search_budget = cfg.at("search_budget").get<std::uint64_t>();
    w.config.coherent = cfg.at("coherent").get<bool>();
    w.top_level = doc.at("N").get<int>();
    try {
      w.input = graph_from_json(doc.at("input"));
    } catch (const FormatError& ex) {
      throw FormatError(std::string("witness input: ") + ex.what());
    }

    if (!doc.at("level2").is_null()) {
      w.base.emplace(build_set_assignment(w.input), w.config.vertex_cap);
      if (w.base->assignment().to_json() != doc.at("level2"))
        throw FormatError("witness level2: set assignment does not match the input");
      const auto& ls = doc.at("levels");
      if (static_cast<int>(ls.size()) != w.top_level - 2)
        throw FormatError("witness: level count does not match N");
      for (std::size_t l = 0; l < ls.size(); ++l) {
        const int i = static_cast<int>(l) + 2;
        if (ls[l].at("level").get<int>() != i + 1) throw FormatError("witness: levels out of order");
        w.levels.push_back(
            LevelGraph::from_json(ls[l], w.level_graph(i), w.level_embedding(i), w.config.vertex_cap));
      }
    } else if (w.input.size() >= 2 || !doc.at("levels").empty()) {
      throw FormatError("witness: missing level2 for a non-degenerate input");
    }

    const auto& final_doc = doc.at("final");
    std::vector<VertexId> names;
    for (const auto& n : final_doc.at("vertices")) names.push_back(n.get<std::string>());
    std::vector<IndexedEdge> edges;
    for (const auto& e : final_doc.at("edges")) {
      const auto u = e.at(0).get<std::size_t>();
      const auto v = e.at(1).get<std::size_t>();
      if (u >= names.size() || v >= names.size()) throw FormatError("witness final: edge out of range");
      try {
        edges.push_back({u, v, parse_label(e.at(2).get<std::string>())});
      } catch (const std::invalid_argument& ex) {
        throw FormatError(std::string("witness final: ") + ex.what());
      }
    }
    try {
      w.final = EdgeLabelledGraph(std::move(names), std::move(edges));
    } catch (const PreconditionError& ex) {
      throw FormatError(std::string("witness final: ") + ex.what());
    }

    if (!w.degenerate()) {
      const auto& top = w.level_graph(w.top_level);
      for (const auto& n : doc.at("component")) {
        auto idx = top.find(n.get<std::string>());
        if (!idx) throw FormatError("witness component: unknown vertex");
        w.component.push_back(*idx);
      }
      if (!std::is_sorted(w.component.begin(), w.component.end()))
        throw FormatError("witness component: not in canonical order");
    } else {
      for (VertexIndex v = 0; v < w.input.size(); ++v) w.component.push_back(v);
    }

    w.final_embedding.assign(w.input.size(), kUnmapped);
    for (const auto& p : doc.at("final_embedding")) {
      auto a = w.input.find(p.at(0).get<std::string>());
      auto b = w.final.find(p.at(1).get<std::string>());
      if (!a || !b) throw FormatError("witness final_embedding: unknown vertex");
      w.final_embedding[*a] = *b;
    }
    for (auto v : w.final_embedding)
      if (v == kUnmapped) throw FormatError("witness final_embedding: not total");
    return w;
  } catch (const nlohmann::json::exception& ex) {
    throw FormatError(std::string("witness: ") + ex.what());
  }
}

}  // namespace eppa
