#include <doctest.h>

#include <algorithm>

#include "../support/oracles.hpp"
#include "eppa/errors.hpp"
#include "eppa/graph_io.hpp"
#include "eppa/pipeline.hpp"

using namespace eppa;
using oracle::graph;
using oracle::triangle;

namespace {

const EdgeLabelledGraph& two_point() {
  static const auto g = graph({"a", "b"}, {{"a", "b", "1"}});
  return g;
}

const Witness& witness_112() {
  static const auto w = build_witness(triangle("1", "1", "2"));
  return w;
}

// Partial isometries of the copy, as maps over w.final.
std::vector<IndexMap> copy_maps(const Witness& w) {
  const auto& a = w.input;
  std::vector<IndexMap> out;
  for (const auto& p : oracle::partial_automorphisms(a, a.size())) {
    IndexMap f(w.final.size(), kUnmapped);
    for (const auto& [x, y] : p) f[w.final_embedding[x]] = w.final_embedding[y];
    out.push_back(std::move(f));
  }
  return out;
}

void check_witness_shape(const Witness& w) {
  CHECK(oracle::is_metric(w.final));
  const auto d = oracle::matrix(w.input);
  for (VertexIndex x = 0; x < w.input.size(); ++x)
    for (VertexIndex y = 0; y < w.input.size(); ++y)
      if (x != y) CHECK(w.final.label(w.final_embedding[x], w.final_embedding[y]) == d[x][y]);
}

}  // namespace

TEST_CASE("compute_N") {
  CHECK(compute_N(two_point()) == 2);
  CHECK(compute_N(graph({"v"}, {})) == 2);
  CHECK(compute_N(triangle("1", "1", "2")) == 3);
  CHECK(compute_N(triangle("1", "2", "3")) == 4);
  CHECK(compute_N(triangle("2", "3", "4")) == 3);
  CHECK(compute_N(graph({"a", "b", "c"}, {{"a", "b", "1/2"}, {"b", "c", "1/3"}, {"a", "c", "5/6"}})) == 3);
  CHECK_THROWS_AS(compute_N(triangle("1", "1", "3")), PreconditionError);
  CHECK_THROWS_AS(compute_N(graph({"x", "y", "z"}, {{"x", "y", "1"}, {"y", "z", "1"}})),
                  PreconditionError);
}

TEST_CASE("a non-metric cycle has at most floor(max/min) + 1 vertices") {
  oracle::Rng rng(61);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = oracle::uniform(rng, 3, 9);
    const auto c = oracle::random_nonmetric_cycle(rng, n, {Label(1), Label(3, 2), Label(2), Label(7, 3)});
    const auto spectrum = c.spectrum();
    CHECK(n <= static_cast<std::size_t>((spectrum.back() / spectrum.front()).floor()) + 1);
  }
}

TEST_CASE("two-point witness") {
  const auto w = build_witness(two_point());
  CHECK_FALSE(w.degenerate());
  CHECK(w.top_level == 2);
  CHECK(w.levels.empty());
  CHECK(w.final.size() == 3);
  CHECK(w.final.edge_count() == 3);
  check_witness_shape(w);
  CHECK(final_copy(w).size() == 2);
}

TEST_CASE("single-point witness is degenerate") {
  const auto w = build_witness(graph({"v"}, {}));
  CHECK(w.degenerate());
  CHECK(w.final.size() == 1);
  CHECK(extend_isometry(w, IndexMap{0}) == IndexMap{0});
  CHECK(extend_isometry(w, IndexMap{kUnmapped}) == IndexMap{0});
}

TEST_CASE("(1,1,2) witness") {
  const auto& w = witness_112();
  CHECK(w.top_level == 3);
  REQUIRE(w.levels.size() == 1);
  CHECK(w.level_graph(2).size() == 70);
  check_witness_shape(w);
  // The component covers the copy and is connected in C_N.
  const auto& top = w.level_graph(3);
  for (VertexIndex x = 0; x < w.input.size(); ++x)
    CHECK(std::binary_search(w.component.begin(), w.component.end(), w.level_embedding(3)[x]));
  CHECK(oracle::connected(induced_subgraph(top, std::span<const VertexIndex>(w.component))));
}

TEST_CASE("completion keeps every edge of the component") {
  for (const auto* a : {&two_point(), &witness_112().input}) {
    const auto w = a == &two_point() ? build_witness(*a) : witness_112();
    const auto& top = w.level_graph(w.top_level);
    const auto sub = induced_subgraph(top, std::span<const VertexIndex>(w.component));
    REQUIRE(sub.size() == w.final.size());
    for (const auto& e : sub.edges()) CHECK(w.final.label(e.u, e.v) == e.label);
    CHECK(oracle::matrix(w.final) == oracle::all_pairs_shortest(sub));
  }
}

TEST_CASE("every partial isometry of the copy extends") {
  for (const auto& a : {two_point(), triangle("1", "1", "2"), triangle("1", "1", "1")}) {
    for (bool coherent : {true, false}) {
      WitnessConfig config;
      config.coherent = coherent;
      const auto w = build_witness(a, config);
      std::size_t n = 0;
      for (const auto& phi : copy_maps(w)) {
        const auto f = extend_isometry(w, phi);
        CHECK(oracle::is_automorphism(w.final, f));
        CHECK(oracle::extends(f, phi));
        ++n;
      }
      CHECK(n == oracle::partial_automorphisms(a, a.size()).size());
    }
  }
}

TEST_CASE("extensions through the levels agree with the final extension") {
  const auto& w = witness_112();
  for (const auto& p : oracle::partial_automorphisms(w.input, 3)) {
    const auto phi = oracle::to_index(3, p);
    const auto steps = extend_through_levels(w, phi);
    REQUIRE(steps.size() == static_cast<std::size_t>(w.top_level - 1));
    for (int i = 2; i <= w.top_level; ++i) {
      const auto& f = steps[i - 2];
      CHECK(oracle::is_automorphism(w.level_graph(i), f));
      for (VertexIndex x = 0; x < 3; ++x)
        if (phi[x] != kUnmapped) CHECK(f[w.level_embedding(i)[x]] == w.level_embedding(i)[phi[x]]);
    }
    // Projection equivariance between consecutive levels.
    const auto& lvl = w.levels[0];
    for (VertexIndex v = 0; v < lvl.graph().size(); ++v)
      CHECK(lvl.base(steps[1][v]) == steps[0][lvl.base(v)]);
  }
}

TEST_CASE("coherent extension respects composition") {
  for (const auto& a : {two_point(), triangle("1", "1", "2")}) {
    const auto w = build_witness(a);
    const auto maps = copy_maps(w);
    std::size_t pairs = 0;
    for (const auto& phi : maps)
      for (const auto& psi : maps) {
        std::vector<bool> img(w.final.size()), dom(w.final.size());
        for (VertexIndex v = 0; v < w.final.size(); ++v) {
          if (phi[v] != kUnmapped) img[phi[v]] = true;
          dom[v] = psi[v] != kUnmapped;
        }
        if (img != dom) continue;
        IndexMap both(w.final.size(), kUnmapped);
        for (VertexIndex v = 0; v < w.final.size(); ++v)
          if (phi[v] != kUnmapped) both[v] = psi[phi[v]];
        const auto f = extend_isometry(w, phi), g = extend_isometry(w, psi),
                   fg = extend_isometry(w, both);
        for (VertexIndex v = 0; v < f.size(); ++v) CHECK(fg[v] == g[f[v]]);
        ++pairs;
      }
    CHECK(pairs > 0);
  }
}

TEST_CASE("extend_isometry rejects maps outside the copy or not isometric") {
  const auto& w = witness_112();
  const auto copy = final_copy(w);
  VertexIndex outside = 0;
  while (std::binary_search(copy.begin(), copy.end(), outside)) ++outside;
  IndexMap leaves(w.final.size(), kUnmapped);
  leaves[w.final_embedding[0]] = outside;
  CHECK_THROWS_WITH_AS(extend_isometry(w, leaves),
                       "not a partial isometry of the copy: leaves the copy of A", PreconditionError);
  // x-y is 1, x-z is 2.
  IndexMap stretch(w.final.size(), kUnmapped);
  stretch[w.final_embedding[0]] = w.final_embedding[0];
  stretch[w.final_embedding[1]] = w.final_embedding[2];
  CHECK_THROWS_WITH_AS(extend_isometry(w, stretch),
                       "not a partial isometry of the copy: distances not preserved",
                       PreconditionError);
  CHECK_THROWS_AS(extend_isometry(w, IndexMap{0}), PreconditionError);

  const auto named = extend_isometry(w, PartialMap({{w.final.name(w.final_embedding[0]),
                                                     w.final.name(w.final_embedding[2])},
                                                    {w.final.name(w.final_embedding[2]),
                                                     w.final.name(w.final_embedding[0])}}));
  CHECK(named.size() == w.final.size());
  CHECK(check_map(named, w.final, w.final, MapMode::automorphism));
}

TEST_CASE("build_witness errors") {
  CHECK_THROWS_AS(build_witness(triangle("1", "1", "3")), PreconditionError);
  WitnessConfig tiny;
  tiny.vertex_cap = 10;
  try {
    build_witness(triangle("1", "1", "2"), tiny);
    FAIL("expected the cap to trip");
  } catch (const CapExceeded& ex) {
    CHECK(ex.stage() == "level 2");
    CHECK(ex.requested() == 70);
  }
  tiny.vertex_cap = 70;
  try {
    build_witness(triangle("1", "1", "2"), tiny);
  } catch (const CapExceeded& ex) {
    CHECK(ex.stage() == "level 3");
  }
}

TEST_CASE("stats") {
  const auto s = witness_stats(witness_112());
  CHECK(s.top_level == 3);
  REQUIRE(s.levels.size() == 2);
  CHECK(s.levels[0].level == 2);
  CHECK(s.levels[0].vertices == 70);
  CHECK(s.levels[1].level == 3);
  CHECK(s.final_vertices == witness_112().final.size());
  CHECK(s.component_size == s.final_vertices);
  const auto text = s.to_text();
  CHECK(text.rfind("N = 3\n", 0) == 0);
  CHECK(text.find("C_2: 70 vertices") != std::string::npos);
  CHECK(s.to_json().at("N") == 3);
}

TEST_CASE("witness documents round trip") {
  for (const auto& w : {build_witness(two_point()), witness_112(), build_witness(graph({"v"}, {}))}) {
    const auto doc = witness_to_json(w);
    const auto back = witness_from_json(parse_json_text(doc.dump(), "w"));
    CHECK(witness_to_json(back) == doc);
    CHECK(back.final == w.final);
    CHECK(back.final_embedding == w.final_embedding);
    for (const auto& phi : copy_maps(w)) CHECK(extend_isometry(back, phi) == extend_isometry(w, phi));
  }
}

TEST_CASE("witness loader rejects malformed documents") {
  const auto doc = witness_to_json(witness_112());
  CHECK_THROWS_AS(witness_from_json(Json::array()), FormatError);
  auto no_final = doc;
  no_final.erase("final");
  CHECK_THROWS_AS(witness_from_json(no_final), FormatError);
  auto version = doc;
  version["format_version"] = 99;
  CHECK_THROWS_AS(witness_from_json(version), FormatError);
  auto edge = doc;
  edge["final"]["edges"][0][1] = 100000;
  CHECK_THROWS_AS(witness_from_json(edge), FormatError);
  auto level2 = doc;
  level2["level2"]["k"] = 7;
  CHECK_THROWS_AS(witness_from_json(level2), FormatError);
  auto input = doc;
  input["input"]["edges"][0][2] = "0";
  CHECK_THROWS_AS(witness_from_json(input), FormatError);
}
