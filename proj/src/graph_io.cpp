#include "eppa/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "eppa/errors.hpp"

namespace eppa {

namespace {

std::string element(std::string_view list, std::size_t i) {
  return std::string(list) + "[" + std::to_string(i) + "]";
}

const std::string& expect_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw FormatError(where + ": expected a string");
  return j.get_ref<const std::string&>();
}

}  // namespace

Json graph_to_json(const EdgeLabelledGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges())
    edges.push_back(Json::array({g.name(e.u), g.name(e.v), e.label.to_string()}));
  return Json{{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

EdgeLabelledGraph graph_from_json(const Json& doc) {
  if (!doc.is_object()) throw FormatError("graph: expected an object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw FormatError("graph: missing 'vertices' array");
  if (!doc.contains("edges") || !doc["edges"].is_array())
    throw FormatError("graph: missing 'edges' array");

  std::vector<VertexId> names;
  std::set<VertexId> seen;
  const auto& vs = doc["vertices"];
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& name = expect_string(vs[i], element("vertices", i));
    if (name.empty()) throw FormatError(element("vertices", i) + ": empty vertex name");
    if (!seen.insert(name).second)
      throw FormatError(element("vertices", i) + ": duplicate vertex '" + name + "'");
    names.push_back(name);
  }

  std::vector<Edge> edges;
  std::set<std::pair<VertexId, VertexId>> pairs;
  const auto& es = doc["edges"];
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto where = element("edges", i);
    const auto& e = es[i];
    if (!e.is_array() || e.size() != 3)
      throw FormatError(where + ": expected [endpoint, endpoint, label]");
    VertexId u = expect_string(e[0], where + "[0]");
    VertexId v = expect_string(e[1], where + "[1]");
    const auto& text = expect_string(e[2], where + "[2]");
    if (!seen.count(u)) throw FormatError(where + ": unknown vertex '" + u + "'");
    if (!seen.count(v)) throw FormatError(where + ": unknown vertex '" + v + "'");
    if (u == v) throw FormatError(where + ": loop at '" + u + "'");
    Label label;
    try {
      label = parse_label(text);
    } catch (const std::exception& ex) {
      throw FormatError(where + ": " + ex.what());
    }
    if (v < u) std::swap(u, v);
    if (!pairs.emplace(u, v).second)
      throw FormatError(where + ": duplicate pair {'" + u + "', '" + v + "'}");
    edges.push_back({std::move(u), std::move(v), label});
  }
  return EdgeLabelledGraph::from_edges(std::move(names), edges);
}

Json map_to_json(const PartialMap& f) {
  Json out = Json::array();
  for (const auto& [x, y] : f.pairs()) out.push_back(Json::array({x, y}));
  return out;
}

PartialMap map_from_json(const Json& doc) {
  if (!doc.is_array()) throw FormatError("map: expected a list of pairs");
  std::vector<PartialMap::Pair> pairs;
  std::set<VertexId> sources;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto where = element("map", i);
    const auto& p = doc[i];
    if (!p.is_array() || p.size() != 2) throw FormatError(where + ": expected [source, target]");
    const auto& x = expect_string(p[0], where + "[0]");
    const auto& y = expect_string(p[1], where + "[1]");
    if (!sources.insert(x).second) throw FormatError(where + ": source '" + x + "' repeated");
    pairs.emplace_back(x, y);
  }
  return PartialMap(std::move(pairs));
}

Json parse_json_text(std::string_view text, std::string_view source_name) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& ex) {
    // Translate the byte offset into a line/column pair.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(ex.byte == 0 ? 0 : ex.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw FormatError(std::string(source_name) + ":" + std::to_string(line) + ":" +
                      std::to_string(column) + ": JSON syntax error");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path.string());
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot write");
  out << doc.dump() << '\n';
}

EdgeLabelledGraph read_graph_file(const std::filesystem::path& path) {
  const Json doc = read_json_file(path);
  try {
    return graph_from_json(doc);
  } catch (const FormatError& ex) {
    throw FormatError(path.string() + ": " + ex.what());
  }
}

PartialMap read_map_file(const std::filesystem::path& path) {
  const Json doc = read_json_file(path);
  try {
    return map_from_json(doc);
  } catch (const FormatError& ex) {
    throw FormatError(path.string() + ": " + ex.what());
  }
}

}  // namespace eppa
