#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "eppa/graph.hpp"

namespace eppa {

using Json = nlohmann::json;

// Graph documents:
//   {"vertices": ["a","b",...], "edges": [["a","b","3/2"], ...]}
// Labels are "p" or "p/q" in lowest terms, endpoints of each edge are
// written in canonical (sorted) order and a pair may appear only once.
//
// Partial map documents: a list of pairs [["x","y"], ...].
//
// Every parse failure throws FormatError naming the offending element.

Json graph_to_json(const EdgeLabelledGraph& g);
EdgeLabelledGraph graph_from_json(const Json& doc);

Json map_to_json(const PartialMap& f);
PartialMap map_from_json(const Json& doc);

/// Parses JSON text; syntax errors are reported with line and column.
Json parse_json_text(std::string_view text, std::string_view source_name);
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

EdgeLabelledGraph read_graph_file(const std::filesystem::path& path);
PartialMap read_map_file(const std::filesystem::path& path);

}  // namespace eppa
