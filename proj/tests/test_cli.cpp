#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "anosov/cli.hpp"
#include "anosov/io.hpp"
#include "anosov/models.hpp"

using namespace anosov;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run kit(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "anosov_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string file(const std::string& name, const std::string& text) {
  const auto path = (scratch() / name).string();
  io::writeFile(path, text);
  return path;
}

const std::string kCat = R"({"type":"cat-suspension","matrix":[2,1,1,1]})";

std::string syntheticJson(const std::vector<int>& indices) {
  std::string orbits;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    orbits += (i ? "," : "") + std::string(R"({"id":"g)") + std::to_string(i + 1) + R"(","period":)" +
              std::to_string(1.0 + 0.1 * static_cast<double>(i)) + R"(,"index":)" + std::to_string(indices[i]) + "}";
  }
  return R"({"type":"synthetic","orbits":[)" + orbits + "]}";
}

}  // namespace

TEST_CASE("census of the cat suspension to T = 3") {
  const auto model = file("cat.json", kCat);
  const auto out = (scratch() / "c.json").string();
  const auto r = kit({"census", "--model", model, "--tmax", "3", "--out", out});
  CHECK(r.code == 0);
  const auto table = io::readCensus(io::readFile(out));
  CHECK(table.records.size() == 10);
  // independent route: the library census written by the same serializer
  CHECK(io::readFile(out) == io::writeCensus(models::suspensionCensus(ToralSuspension{}, 3.0)));

  const auto stdoutOnly = kit({"census", "--model", model, "--tmax", "3"});
  CHECK(stdoutOnly.out == io::readFile(out));
}

TEST_CASE("verify cz passes on the seeded corpus") {
  const auto r = kit({"verify", "cz", "--trials", "100", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS cz") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify blockform and parity") {
  const auto b = kit({"verify", "blockform", "--trials", "300", "--seed", "5"});
  CHECK(b.code == 0);
  CHECK(b.out.find("PASS blockform 300/300") != std::string::npos);

  const auto chain = kit({"verify", "blockform", "--trials", "30", "--tol-chain", "0"});
  CHECK(chain.code == 2);

  const auto neg = file("neg.json", R"({"type":"cat-suspension","matrix":[-2,-1,-1,-1]})");
  const auto p = kit({"verify", "parity", "--model", neg, "--tmax", "5", "--trials", "20"});
  CHECK(p.code == 0);
  CHECK(p.out.find("-1\tyes") != std::string::npos);
  CHECK(p.out.find("PASS naturality") != std::string::npos);

  const auto ellipsoid = file("e.json", R"({"type":"ellipsoid","a":1,"b":1.4142135623730951})");
  const auto wrong = kit({"verify", "parity", "--model", ellipsoid, "--tmax", "5"});
  CHECK(wrong.code == 1);
  CHECK(wrong.err.find("model.type") != std::string::npos);
}

TEST_CASE("sphere obstruction on an all-even synthetic census") {
  const auto model = file("even_model.json", syntheticJson({2, 4}));
  const auto census = (scratch() / "synthetic_even.json").string();
  REQUIRE(kit({"census", "--model", model, "--tmax", "10", "--out", census}).code == 0);
  const auto r = kit({"obstruct", "sphere", "--census", census, "--max-degree", "51"});
  CHECK(r.code == 2);
  CHECK(r.out.find("PARITY_CONTRADICTION") != std::string::npos);

  const auto ellipsoid = file("e.json", R"({"type":"ellipsoid","a":1,"b":1.4142135623730951})");
  const auto ball = kit({"obstruct", "sphere", "--model", ellipsoid, "--tmax", "80", "--max-degree", "101"});
  CHECK(ball.code == 0);
  CHECK(ball.out.find("\"MATCH\"") != std::string::npos);
}

TEST_CASE("bounded analyzer and e2page exit codes") {
  const auto six = file("six.json", syntheticJson({2, 4, 6, 8, 10, 12}));
  const auto b = kit({"obstruct", "bounded", "--model", six, "--tmax", "2", "--bound", "5"});
  CHECK(b.code == 2);
  CHECK(b.out.find("\"degree\": 120") != std::string::npos);
  CHECK(b.out.find("OBSTRUCTION_CONFIRMED") != std::string::npos);

  const auto mixed = file("mixed.json", syntheticJson({3, 4}));
  CHECK(kit({"e2page", "--model", mixed, "--tmax", "2"}).code == 2);
  const auto model = file("cat.json", kCat);
  const auto csv = (scratch() / "e2.csv").string();
  CHECK(kit({"e2page", "--model", model, "--tmax", "3", "--out", csv}).code == 0);
  CHECK(io::readFile(csv) == "class_label,degree,rank\n1,0,1\n2,0,3\n3,0,6\n");
}

TEST_CASE("estimators and squeeze") {
  const auto model = file("cat.json", kCat);
  const auto csv = (scratch() / "counts.csv").string();
  const auto e = kit({"entropy", "--model", model, "--grid", "1:10:1", "--out", csv});
  CHECK(e.code == 0);
  const std::string counts = io::readFile(csv);
  CHECK(counts.rfind("T,P,Pg,rate_est,slope_est\n", 0) == 0);
  // |Fix A| = 1 and |Fix A^2| = 5: the fixed orbit, its double cover and two orbits of period 2
  CHECK(counts.find("\n1,1,1,") != std::string::npos);
  CHECK(counts.find("\n2,4,4,") != std::string::npos);

  const auto flat = file("flat.json", R"({"type":"flat-torus","n":2})");
  const auto g = kit({"gamma", "--model", flat, "--grid", "10:60:5"});
  CHECK(g.code == 0);
  CHECK(g.out.find("\"finite\": true") != std::string::npos);

  CHECK(kit({"squeeze", "--model", model, "--grid", "5:25:1"}).code == 0);
}

TEST_CASE("errors exit 1 and name the field") {
  const auto bad = file("bad.json", R"({"type":"cat-suspension","matrix":[2,"1",1,1]})");
  const auto r = kit({"census", "--model", bad, "--tmax", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("model.matrix[1]") != std::string::npos);

  const auto model = file("cat.json", kCat);
  CHECK(kit({"census", "--model", model}).err.find("--tmax") != std::string::npos);
  CHECK(kit({"census", "--model", model, "--tmax", "-1"}).code == 1);
  const auto grid = kit({"entropy", "--model", model, "--grid", "5:1:1"});
  CHECK(grid.code == 1);
  CHECK(grid.err.find("--grid") != std::string::npos);
  CHECK(kit({"census", "--model", (scratch() / "missing.json").string(), "--tmax", "1"}).code == 1);
  CHECK(kit({"frobnicate"}).code == 1);
  CHECK(kit({"census", "--model", model, "--tmax", "1", "--workers", "0"}).code == 1);
  CHECK(kit({"--help"}).code == 0);
}

TEST_CASE("outputs do not depend on the worker count") {
  const auto model = file("cat.json", kCat);
  const auto trig = file("trig.json", R"({"type":"cat-suspension","matrix":[2,1,1,1],)"
                                      R"("roof":{"kind":"trig","constant":1,"terms":[{"k":[1,0],"cos":0.3}]}})");
  const std::vector<std::vector<std::string>> commands{
      {"census", "--model", model, "--tmax", "8"},
      {"census", "--model", trig, "--tmax", "6", "--holonomy"},
      {"verify", "cz", "--trials", "10", "--seed", "3"},
      {"verify", "parity", "--model", model, "--tmax", "6", "--trials", "30"},
      {"squeeze", "--model", trig, "--grid", "2:6:0.5"},
  };
  for (const auto& command : commands) {
    std::string reference;
    for (const char* w : {"1", "4", "8"}) {
      auto args = command;
      args.insert(args.end(), {"--workers", w});
      const auto r = kit(args);
      REQUIRE(r.code == 0);
      if (reference.empty()) reference = r.out;
      CHECK(r.out == reference);
    }
  }
}
