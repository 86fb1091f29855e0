#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "fuzzygeo/cli.hpp"
#include "fuzzygeo/grid_io.hpp"

using namespace fuzzygeo;
using namespace fuzzygeo::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fuzzygeo");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fuzzygeo_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

const char* kSquareRegion = R"({"type":"FeatureCollection","features":[{"type":"Feature","properties":{},
  "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1],[0,0]]]}}]})";
const char* kHalfResponses = R"({"type":"FeatureCollection","features":[
  {"type":"Feature","properties":{"descriptor":"west"},"geometry":{"type":"Polygon","coordinates":[[[0,0],[0.5,0],[0.5,1],[0,1],[0,0]]]}},
  {"type":"Feature","properties":{},"geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1]]]}},
  {"type":"Feature","properties":{"descriptor":"east"},"geometry":{"type":"Polygon","coordinates":[[[0.5,0],[1,0],[1,1]]]}}]})";
const char* kBowtieResponses = R"({"type":"FeatureCollection","features":[
  {"type":"Feature","properties":{},"geometry":{"type":"Polygon","coordinates":[[[0,0],[1,1],[1,0],[0,1]]]}}]})";

}  // namespace

TEST_CASE("build, eval and export on the unit square") {
  TempDir dir;
  write(dir / "region.geojson", kSquareRegion);
  write(dir / "responses.geojson", kHalfResponses);

  auto r = run({"build", "--region", dir / "region.geojson", "--responses", dir / "responses.geojson", "--descriptor",
                "west", "--granularity", "50", "--out", dir / "west.json"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("9 points") != std::string::npos);
  const auto grid = load_grid(read_text(dir / "west.json"));
  CHECK(grid.points.size() == 9);
  CHECK(load_grid(save_grid(grid)) == grid);

  // Stored point: lon 1, lat 0.5 has md 0.5.
  r = run({"eval", "--grid", dir / "west.json", "--lon", "1", "--lat", "0.5"});
  CHECK(r.code == 0);
  CHECK(r.out == "0.500000000000\n");
  const auto again = run({"eval", "--grid", dir / "west.json", "--lon", "0.77", "--lat", "0.31"});
  CHECK(again.out == run({"eval", "--grid", dir / "west.json", "--lon", "0.77", "--lat", "0.31"}).out);

  r = run({"export", "--grid", dir / "west.json", "--format", "csv", "--out", dir / "west.csv"});
  CHECK(r.code == 0);
  const auto csv = read_text(dir / "west.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
  CHECK(csv.rfind("lon,lat,md\n", 0) == 0);

  r = run({"export", "--grid", dir / "west.json", "--format", "geojson"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["features"].size() == 9);
  CHECK(doc["features"][0]["properties"].contains("md"));

  r = run({"monotonicity", "--grid", dir / "west.json", "--axis", "lon", "--direction", "decreasing", "--out",
           dir / "mono.json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0 violations") != std::string::npos);
}

TEST_CASE("build failures exit with 1 and name the cause") {
  TempDir dir;
  write(dir / "region.geojson", kSquareRegion);
  write(dir / "bad.geojson", kBowtieResponses);
  write(dir / "responses.geojson", kHalfResponses);

  auto r = run({"build", "--region", dir / "region.geojson", "--responses", dir / "bad.geojson", "--descriptor", "north",
                "--out", dir / "g.json"});
  CHECK(r.code == 1);
  CHECK(r.err.find("EmptyCorpus") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "g.json"));

  r = run({"build", "--region", dir / "region.geojson", "--responses", dir / "responses.geojson", "--descriptor",
           "west", "--granularity", "0", "--out", dir / "g.json"});
  CHECK(r.code == 1);
  CHECK(r.err.find("granularity") != std::string::npos);

  r = run({"build", "--region", dir / "missing.geojson", "--responses", dir / "responses.geojson", "--descriptor",
           "west", "--out", dir / "g.json"});
  CHECK(r.code == 1);

  r = run({"build", "--region", dir / "region.geojson"});
  CHECK(r.code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("eval rejects a three-point grid") {
  TempDir dir;
  write(dir / "tiny.json",
        R"({"format_version":1,"descriptor":"x","granularity_pct":50,"bbox":[0,0,1,1],"response_count":1,)"
        R"("points":[[0,0,1],[1,0,1],[0,1,1]]})");
  const auto r = run({"eval", "--grid", dir / "tiny.json", "--lon", "0.5", "--lat", "0.5"});
  CHECK(r.code == 1);
  CHECK(r.err.find("InsufficientGrid") != std::string::npos);
}

TEST_CASE("granularity study with the baseline as the only other") {
  TempDir dir;
  const auto region_path = data_path("region.geojson");
  REQUIRE(run({"synth", "--region", region_path, "--descriptor", "north", "--center", "0.6", "--seed", "11",
               "--out", dir / "north.geojson"})
              .code == 0);
  const auto r = run({"granularity", "--region", region_path, "--responses", dir / "north.geojson", "--descriptor",
                      "north", "--granularity", "5", "--others", "5", "--out", dir / "study.json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(read_text(dir / "study.json"));
  CHECK(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["mean_abs_diff"] == 0.0);
  CHECK(doc["rows"][0]["std_abs_diff"] == 0.0);
  CHECK(r.out.find("Grid granularity") != std::string::npos);
}

TEST_CASE("synthetic pipeline through cross-validation and antonymy") {
  TempDir dir;
  const auto region_path = data_path("region.geojson");
  const auto region_before = read_text(region_path);
  REQUIRE(run({"synth", "--region", region_path, "--descriptor", "north", "--center", "0.6", "--side", "high",
               "--seed", "11", "--out", dir / "north.geojson"})
              .code == 0);
  REQUIRE(run({"synth", "--region", region_path, "--descriptor", "south", "--center", "0.4", "--side", "low",
               "--seed", "11", "--out", dir / "south.geojson"})
              .code == 0);
  for (const char* d : {"north", "south"}) {
    REQUIRE(run({"build", "--region", region_path, "--responses", dir / (std::string(d) + ".geojson"), "--descriptor",
                 d, "--granularity", "2", "--out", dir / (std::string(d) + ".grid.json")})
                .code == 0);
  }

  const std::vector<std::string> xval{"xval", "--region", region_path, "--responses", dir / "north.geojson",
                                      "--responses", dir / "south.geojson", "--descriptor", "north", "--descriptor",
                                      "south", "--folds", "5", "--samples", "10", "--sample-granularity", "2",
                                      "--model-granularity", "4", "--seed", "11"};
  auto first = xval;
  first.insert(first.end(), {"--out", dir / "xval1.json"});
  auto second = xval;
  second.insert(second.end(), {"--out", dir / "xval2.json"});
  const auto r = run(first);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("% Hits mu_north") != std::string::npos);
  REQUIRE(run(second).code == 0);
  CHECK(read_text(dir / "xval1.json") == read_text(dir / "xval2.json"));
  const auto report = nlohmann::json::parse(read_text(dir / "xval1.json"));
  CHECK(report["mean_matrix"]["fractions"][0][0].get<double>() >= 0.95);
  CHECK(report["mean_matrix"]["fractions"][1][1].get<double>() >= 0.95);

  const auto a = run({"antonymy", "--grid-a", dir / "north.grid.json", "--grid-b", dir / "south.grid.json", "--region",
                      region_path, "--granularity", "5", "--out", dir / "ant.json"});
  CHECK(a.code == 0);
  CHECK(nlohmann::json::parse(read_text(dir / "ant.json"))["mean_abs_diff"].get<double>() > 0.0);

  const auto c = run({"classify", "--grid", dir / "north.grid.json", "--grid", dir / "south.grid.json", "--lon",
                      "-7.8", "--lat", "43.6"});
  CHECK(c.code == 0);
  CHECK(c.out.find("winner north") != std::string::npos);

  CHECK(read_text(region_path) == region_before);
}
