#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eppa/cli.hpp"
#include "eppa/graph_io.hpp"

using namespace eppa;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(EPPA_TEST_DATA) + "/" + name; }

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("eppa_cli_" + std::to_string(std::rand()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("check") {
  auto r = run({"check", data("triangle_112.json"), "--metric", "--connected", "--cycles", "3"});
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, "3 vertices, 3 edges"));
  CHECK(contains(r.out, "metric\n"));
  CHECK(contains(r.out, "no induced non-metric cycle"));

  r = run({"check", data("triangle_113.json"), "--metric"});
  CHECK(r.code == kExitFailed);
  CHECK(contains(r.out, "not metric"));
  // Without --metric the report is informational.
  CHECK(run({"check", data("triangle_113.json")}).code == kExitOk);
  r = run({"check", data("triangle_113.json"), "--cycles", "3"});
  CHECK(r.code == kExitFailed);
  CHECK(contains(r.out, "induced non-metric cycle: "));

  r = run({"check", data("path_11.json"), "--metric"});
  CHECK(r.code == kExitFailed);
  CHECK(contains(r.out, "no distance between x and z"));
}

TEST_CASE("complete and cycles") {
  auto r = run({"complete", data("path_11.json")});
  REQUIRE(r.code == kExitOk);
  CHECK(graph_from_json(Json::parse(r.out)) == read_graph_file(data("triangle_112.json")));

  r = run({"cycles", data("triangle_113.json")});
  REQUIRE(r.code == kExitOk);
  const auto cycles = Json::parse(r.out);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].at("deficit") == "1");
  CHECK(run({"cycles", data("triangle_113.json"), "--max-size", "2"}).code == kExitUsage);
}

TEST_CASE("eppa-step") {
  const auto r = run({"eppa-step", data("triangle_123.json")});
  REQUIRE(r.code == kExitOk);
  CHECK(contains(r.err, "k = 6, |U| = 12, 924 vertices"));
  const auto doc = Json::parse(r.out);
  CHECK(doc.at("graph").at("vertices").size() == 924);
  CHECK(doc.at("embedding").size() == 3);
  const auto capped = run({"eppa-step", data("triangle_123.json"), "--vertex-cap", "100"});
  CHECK(capped.code == kExitResource);
  CHECK(contains(capped.err, "cap exceeded at level 2: 924 vertices requested, cap 100"));
}

TEST_CASE("witness, extend, verify and stats") {
  TempDir dir;
  const auto wfile = dir.file("w.json");
  auto r = run({"witness", data("triangle_112.json"), "-o", wfile});
  REQUIRE(r.code == kExitOk);
  CHECK(contains(r.out, "N = 3"));

  r = run({"stats", wfile});
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, "C_2: 70 vertices"));
  r = run({"stats", wfile, "--json"});
  CHECK(Json::parse(r.out).at("N") == 3);

  r = run({"verify", wfile});
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, "verification passed"));
  r = run({"verify", wfile, "--budget", "1"});
  CHECK(r.code == kExitResource);
  CHECK(contains(r.out, "verification incomplete: budget exhausted"));

  // Swap the ends of the 2-edge inside the copy.
  const auto w = read_json_file(wfile);
  const auto& emb = w.at("final_embedding");
  std::string x, z;
  for (const auto& pair : emb) {
    if (pair[0] == "x") x = pair[1];
    if (pair[0] == "z") z = pair[1];
  }
  const auto mfile = dir.file("m.json");
  write_json_file(mfile, Json::array({Json::array({x, z}), Json::array({z, x})}));
  r = run({"extend", wfile, mfile});
  REQUIRE(r.code == kExitOk);
  const auto ext = map_from_json(Json::parse(r.out));
  CHECK(ext.apply(x) == z);
  CHECK(ext.size() == w.at("final").at("vertices").size());

  // x -> x, y -> z is not isometric.
  std::string y;
  for (const auto& pair : emb)
    if (pair[0] == "y") y = pair[1];
  write_json_file(mfile, Json::array({Json::array({x, x}), Json::array({y, z})}));
  r = run({"extend", wfile, mfile});
  CHECK(r.code == kExitFailed);
  CHECK(contains(r.err, "distances not preserved"));
  write_json_file(mfile, Json::array({Json::array({x, "nowhere"})}));
  CHECK(run({"extend", wfile, mfile}).code == kExitFailed);

  // A tampered witness fails verification.
  auto bad = w;
  bad["final"]["edges"][0][2] = "9";
  const auto bfile = dir.file("bad.json");
  write_json_file(bfile, bad);
  r = run({"verify", bfile});
  CHECK(r.code == kExitFailed);
  CHECK(contains(r.out, "FAIL"));
}

TEST_CASE("witness on non-metric input and caps") {
  auto r = run({"witness", data("triangle_113.json")});
  CHECK(r.code == kExitFailed);
  CHECK(contains(r.err, "not a metric space"));
  r = run({"witness", data("triangle_112.json"), "--vertex-cap", "10"});
  CHECK(r.code == kExitResource);
  CHECK(contains(r.err, "level 2"));
  CHECK(run({"witness", data("two_point.json")}).code == kExitOk);
}

TEST_CASE("usage and parse errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"check"}).code == kExitUsage);
  CHECK(run({"witness", data("two_point.json"), "--budget", "0"}).code == kExitUsage);
  const auto r = run({"check", data("bad_label.json")});
  CHECK(r.code == kExitUsage);
  CHECK(contains(r.err, "edges[0]"));
  CHECK(run({"check", data("missing.json")}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("configuration file") {
  TempDir dir;
  const auto cfg = dir.file("cfg.json");
  write(cfg, R"({"vertex_cap": 10})");
  setenv("EPPA_CONFIG", cfg.c_str(), 1);
  auto r = run({"witness", data("triangle_112.json")});
  CHECK(r.code == kExitResource);
  // Flags win over the file.
  r = run({"witness", data("triangle_112.json"), "--vertex-cap", "100000"});
  CHECK(r.code == kExitOk);
  write(cfg, "{");
  CHECK(run({"witness", data("two_point.json")}).code == kExitUsage);
  unsetenv("EPPA_CONFIG");
}
