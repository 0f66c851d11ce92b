#include "eppa/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "eppa/completion.hpp"
#include "eppa/errors.hpp"
#include "eppa/graph_io.hpp"
#include "eppa/pipeline.hpp"
#include "eppa/set_representation.hpp"
#include "eppa/verifier.hpp"

namespace eppa {

namespace {

struct Options {
  std::optional<std::uint64_t> vertex_cap;
  std::optional<std::uint64_t> budget;
  bool no_coherent = false;
  std::string output;
  bool json = false;
};

// Defaults, then the file named by EPPA_CONFIG, then flags.
WitnessConfig resolve_config(const Options& opt) {
  WitnessConfig config;
  if (const char* path = std::getenv("EPPA_CONFIG"); path && *path) {
    const auto doc = read_json_file(path);
    try {
      if (doc.contains("vertex_cap")) config.vertex_cap = doc.at("vertex_cap").get<std::uint64_t>();
      if (doc.contains("search_budget"))
        config.search_budget = doc.at("search_budget").get<std::uint64_t>();
      if (doc.contains("coherent")) config.coherent = doc.at("coherent").get<bool>();
    } catch (const nlohmann::json::exception& ex) {
      throw FormatError(std::string(path) + ": " + ex.what());
    }
  }
  if (opt.vertex_cap) config.vertex_cap = *opt.vertex_cap;
  if (opt.budget) config.search_budget = *opt.budget;
  if (opt.no_coherent) config.coherent = false;
  if (config.vertex_cap == 0 || config.search_budget == 0)
    throw CLI::ValidationError("vertex cap and budget must be positive");
  return config;
}

void emit(const Options& opt, const Json& doc, std::ostream& out) {
  if (opt.output.empty())
    out << doc.dump(2) << '\n';
  else
    write_json_file(opt.output, doc);
}

void add_shared(CLI::App* cmd, Options& opt) {
  cmd->add_option("--vertex-cap", opt.vertex_cap, "Largest level allowed");
  cmd->add_option("--budget", opt.budget, "Search budget in nodes");
  cmd->add_flag("--no-coherent", opt.no_coherent, "Use the non order-preserving extension");
  cmd->add_option("-o,--output", opt.output, "Output file");
}

std::string names(const EdgeLabelledGraph& g, const std::vector<VertexIndex>& vs) {
  std::string s;
  for (auto v : vs) s += (s.empty() ? "" : " ") + g.name(v);
  return s;
}

int cmd_check(const std::string& file, bool metric, bool connected, std::size_t cycles,
              const Options& opt, std::ostream& out) {
  const auto g = read_graph_file(file);
  Json report = {{"vertices", g.size()}, {"edges", g.edge_count()}};
  Json spectrum = Json::array();
  for (const auto& l : g.spectrum()) spectrum.push_back(l.to_string());
  report["spectrum"] = spectrum;
  out << g.size() << " vertices, " << g.edge_count() << " edges, spectrum " << spectrum.dump()
      << '\n';
  bool ok = true;

  const auto violation = find_metric_violation(g);
  report["metric"] = !violation;
  if (violation) {
    const auto& v = *violation;
    if (v.missing_edge) {
      report["metric_violation"] = {{"missing_pair", {g.name(v.x), g.name(v.y)}}};
      out << "not metric: no distance between " << g.name(v.x) << " and " << g.name(v.y) << '\n';
    } else {
      report["metric_violation"] = {{"triple", {g.name(v.x), g.name(v.y), g.name(v.z)}}};
      out << "not metric: d(" << g.name(v.x) << "," << g.name(v.y) << ") = "
          << *g.label(v.x, v.y) << " > d(" << g.name(v.x) << "," << g.name(v.z) << ") + d("
          << g.name(v.z) << "," << g.name(v.y) << ") = " << *g.label(v.x, v.z) << " + "
          << *g.label(v.z, v.y) << '\n';
    }
  } else {
    out << "metric\n";
  }
  if (metric && violation) ok = false;

  const bool conn = !g.empty() && is_connected(g);
  report["connected"] = conn;
  out << (conn ? "connected\n" : "not connected\n");
  if (connected && !conn) ok = false;

  if (cycles >= 3) {
    Json found = Json::array();
    for (std::size_t s = 3; s <= cycles && s <= g.size(); ++s)
      for (const auto& c : find_induced_nonmetric_cycles(g, s)) {
        Json cyc = Json::array();
        for (auto v : c.vertices) cyc.push_back(g.name(v));
        found.push_back({{"cycle", cyc}, {"deficit", c.deficit.to_string()}});
        out << "induced non-metric cycle: " << names(g, c.vertices) << '\n';
      }
    report["nonmetric_cycles"] = found;
    if (found.empty()) out << "no induced non-metric cycle on 3.." << cycles << " vertices\n";
    else ok = false;
  }
  report["passed"] = ok;
  if (!opt.output.empty()) write_json_file(opt.output, report);
  return ok ? kExitOk : kExitFailed;
}

int cmd_complete(const std::string& file, const Options& opt, std::ostream& out) {
  const auto g = read_graph_file(file);
  if (g.empty() || !is_connected(g)) throw PreconditionError("input graph is not connected");
  emit(opt, graph_to_json(shortest_path_completion(g)), out);
  return kExitOk;
}

int cmd_cycles(const std::string& file, std::size_t max_size, const Options& opt,
               std::ostream& out) {
  const auto g = read_graph_file(file);
  Json found = Json::array();
  for (std::size_t s = 3; s <= max_size && s <= g.size(); ++s)
    for (const auto& c : find_induced_nonmetric_cycles(g, s)) {
      Json cyc = Json::array();
      for (auto v : c.vertices) cyc.push_back(g.name(v));
      found.push_back({{"cycle", cyc}, {"deficit", c.deficit.to_string()}});
    }
  emit(opt, found, out);
  return kExitOk;
}

int cmd_eppa_step(const std::string& file, const Options& opt, std::ostream& out,
                  std::ostream& err) {
  const auto a = read_graph_file(file);
  const auto config = resolve_config(opt);
  const EppaGraph b = build_eppa_graph(a, config.vertex_cap);
  err << "k = " << b.assignment().k << ", |U| = " << b.assignment().universe.size() << ", "
      << b.graph().size() << " vertices, " << b.graph().edge_count() << " edges\n";
  emit(opt,
       {{"graph", graph_to_json(b.graph())},
        {"embedding", map_to_json(eppa_embedding(a, b))},
        {"assignment", b.assignment().to_json()}},
       out);
  return kExitOk;
}

int cmd_witness(const std::string& file, const Options& opt, std::ostream& out,
                std::ostream& err) {
  const auto a = read_graph_file(file);
  const auto config = resolve_config(opt);
  if (!is_metric_space(a)) throw PreconditionError("input is not a metric space");
  const auto w = build_witness(a, config);
  const auto doc = witness_to_json(w);
  if (opt.output.empty()) {
    out << doc.dump() << '\n';
    err << witness_stats(w).to_text();
  } else {
    write_json_file(opt.output, doc);
    out << witness_stats(w).to_text();
  }
  return kExitOk;
}

int cmd_extend(const std::string& witness_file, const std::string& map_file, const Options& opt,
               std::ostream& out) {
  const auto w = witness_from_json(read_json_file(witness_file));
  const auto phi = read_map_file(map_file);
  if (!phi.is_injective()) throw PreconditionError("not a partial isometry: map is not injective");
  for (const auto& [x, y] : phi.pairs())
    if (!w.final.find(x) || !w.final.find(y))
      throw PreconditionError("not a partial isometry: unknown vertex");
  emit(opt, map_to_json(extend_isometry(w, phi)), out);
  return kExitOk;
}

int cmd_verify(const std::string& witness_file, const Options& opt, std::ostream& out) {
  const auto w = witness_from_json(read_json_file(witness_file));
  auto config = resolve_config(opt);
  if (!opt.budget) config.search_budget = w.config.search_budget;
  const auto report = cross_check(w, config.search_budget);
  out << report.to_text();
  if (!opt.output.empty()) write_json_file(opt.output, report.to_json());
  if (!report.passed() && report.first_failure()) return kExitFailed;
  return report.budget_exhausted ? kExitResource : kExitOk;
}

int cmd_stats(const std::string& witness_file, const Options& opt, std::ostream& out) {
  const auto w = witness_from_json(read_json_file(witness_file));
  const auto stats = witness_stats(w);
  if (opt.json || !opt.output.empty())
    emit(opt, stats.to_json(), out);
  else
    out << stats.to_text();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite metric spaces with the extension property for partial isometries", "eppa"};
  app.require_subcommand(1);
  Options opt;
  std::string file, map_file;
  bool metric = false, connected = false;
  std::size_t cycles = 0, max_size = 4;

  auto* check = app.add_subcommand("check", "Report metricity, connectivity and non-metric cycles");
  check->add_option("graph", file, "Graph file")->required();
  check->add_flag("--metric", metric, "Require a metric space");
  check->add_flag("--connected", connected, "Require a connected graph");
  check->add_option("--cycles", cycles, "Require no induced non-metric cycle up to this size");
  add_shared(check, opt);

  auto* complete = app.add_subcommand("complete", "Shortest path completion");
  complete->add_option("graph", file, "Graph file")->required();
  add_shared(complete, opt);

  auto* cyc = app.add_subcommand("cycles", "List induced non-metric cycles");
  cyc->add_option("graph", file, "Graph file")->required();
  cyc->add_option("--max-size", max_size, "Largest cycle size")->check(CLI::Range(3, 64));
  add_shared(cyc, opt);

  auto* step = app.add_subcommand("eppa-step", "Build the subset graph C_2 alone");
  step->add_option("graph", file, "Graph file")->required();
  add_shared(step, opt);

  auto* witness = app.add_subcommand("witness", "Build a witness");
  witness->add_option("graph", file, "Metric space file")->required();
  add_shared(witness, opt);

  auto* extend = app.add_subcommand("extend", "Extend a partial isometry of the copy");
  extend->add_option("witness", file, "Witness file")->required();
  extend->add_option("map", map_file, "Partial map file")->required();
  add_shared(extend, opt);

  auto* verify = app.add_subcommand("verify", "Check a witness independently");
  verify->add_option("witness", file, "Witness file")->required();
  add_shared(verify, opt);

  auto* stats = app.add_subcommand("stats", "Witness statistics");
  stats->add_option("witness", file, "Witness file")->required();
  stats->add_flag("--json", opt.json, "JSON instead of text");
  add_shared(stats, opt);

  std::vector<const char*> argv{"eppa"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (opt.vertex_cap || opt.budget || opt.no_coherent) resolve_config(opt);
    if (*check) return cmd_check(file, metric, connected, cycles, opt, out);
    if (*complete) return cmd_complete(file, opt, out);
    if (*cyc) return cmd_cycles(file, max_size, opt, out);
    if (*step) return cmd_eppa_step(file, opt, out, err);
    if (*witness) return cmd_witness(file, opt, out, err);
    if (*extend) return cmd_extend(file, map_file, opt, out);
    if (*verify) return cmd_verify(file, opt, out);
    if (*stats) return cmd_stats(file, opt, out);
  } catch (const FormatError& ex) {
    err << "parse error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const CLI::Error& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const CapExceeded& ex) {
    err << "cap exceeded at " << ex.stage() << ": " << ex.requested() << " vertices requested, cap "
        << ex.cap() << '\n';
    return kExitResource;
  } catch (const BudgetExhausted& ex) {
    err << "budget exhausted: " << ex.what() << '\n';
    return kExitResource;
  } catch (const PreconditionError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFailed;
  } catch (const InvariantViolation& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kExitFailed;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace eppa
