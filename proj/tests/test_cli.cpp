#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "torelli/catalog.hpp"
#include "torelli/cli.hpp"
#include "torelli/invariants.hpp"

using namespace torelli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(TORELLI_TEST_DATA) + "/golden/" + name);
  REQUIRE(in);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& content)
      : path_(std::filesystem::temp_directory_path() / ("torelli_cli_" + name)) {
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

json torus_json(const MappingTorusData& t) {
  auto matrix = [](const RationalMatrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
      a.push_back(row);
    }
    return a;
  };
  auto vec = [](const RationalVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
  };
  return json{{"b3", t.b3},
              {"b4_torus", t.b4_torus},
              {"b4_base", t.b4_base},
              {"delta", matrix(t.delta)},
              {"restrict", matrix(t.restrict)},
              {"p1_torus", vec(t.p1_torus)},
              {"zbar_products", vec(t.zbar_products)}};
}

const char* kDegenerate =
    R"json({"name":"degenerate","dim":4,"simply_connected":true,"betti":[1,0,2,0,1],)json"
    R"json("ring":{"mult":{"(2,2)":[[["1"],["0"]],[["0"],["0"]]]},"fundamental":["1"]}})json";

}  // namespace

TEST_CASE("documented outputs") {
  const auto v = call({"verdict", "K2T"});
  CHECK(v.code == 0);
  CHECK(v.out.substr(0, v.out.find('\n')) == "INFINITE — Assumption (**) case 1 (Thm 1.4); k=48, l≥80");

  const auto h = call({"hypersurface", "--n", "3", "--d", "5", "--json"});
  CHECK(h.code == 0);
  CHECK(json::parse(h.out) == json::parse(R"({"euler":-200,"b3":204,"p1":"-20"})"));

  const auto j = call({"j", "--g", "2", "--word", "1:1,2:-1"});
  CHECK(j.code == 0);
  CHECK(j.out == "(4, -4, 0, 0) in basis PD(e_i)\n");
}

TEST_CASE("JSON output matches the golden files") {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
      {{"--json", "verdict", "K3^[2]"}, "verdict_k3_2.json"},
      {{"--json", "verdict", "K2T"}, "verdict_k2t.json"},
      {{"--json", "verdict", "X(5)"}, "verdict_x5.json"},
      {{"--json", "minimal-model", "S2", "--max-degree", "4"}, "model_s2.json"},
      {{"--json", "minimal-model", "CP3"}, "model_cp3.json"},
      {{"--json", "j", "--g", "2", "--word", "1:1,2:-1"}, "j_g2.json"},
      {{"--json", "hypersurface", "--n", "3", "--d", "5"}, "hypersurface_3_5.json"},
      {{"--json", "catalog", "--verdicts"}, "catalog_verdicts.json"},
  };
  for (const auto& [args, file] : cases) {
    INFO(file);
    const auto r = call(args);
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK_NOTHROW((void)json::parse(r.out));
    CHECK(r.out == golden(file));
    // Stable across runs.
    CHECK(call(args).out == r.out);
  }
}

TEST_CASE("every verdict cites a theorem") {
  const auto r = call({"--json", "catalog", "--verdicts"});
  REQUIRE(r.code == 0);
  const json all = json::parse(r.out);
  CHECK(all.size() == catalog_references().size());
  for (const auto& e : all) {
    INFO(e["reference"]);
    const std::string summary = e["verdict"]["summary"];
    CHECK((summary.find("(Thm ") != std::string::npos || summary.find("(Cor ") != std::string::npos));
    CHECK_FALSE(e["verdict"]["reasons"].empty());
    const auto text = call({"verdict", e["reference"].get<std::string>()});
    CHECK(text.out.substr(0, text.out.find('\n')) == summary);
  }
  const std::map<std::string, std::string> expected{
      {"K2T", "Infinite"},      {"K3^[2]", "Finite"},         {"X(5)", "Infinite"},
      {"X(5)xCP1", "Infinite"}, {"X(5)xCP1^2", "Infinite"},  {"X(2)", "Unknown"}};
  for (const auto& e : all) {
    const auto it = expected.find(e["reference"].get<std::string>());
    if (it != expected.end()) CHECK(e["verdict"]["status"] == it->second);
  }
}

TEST_CASE("exit codes") {
  const TempFile cp3("cp3.json", serialize(complex_projective_space(3)));
  const TempFile broken("broken.json", R"({"name":"x","dim":2,"simply_connected":true,"betti":[1,0]})");
  const TempFile degenerate("degenerate.json", kDegenerate);
  const TempFile not_json("garbage.json", "{ not json");
  const TempFile torus("torus.json", torus_json(dehn_twist_torus(parse_twist_word(1, "1:1"), -4, 5)).dump());
  MappingTorusData bad = dehn_twist_torus(parse_twist_word(1, "1:1"), -4, 5);
  bad.p1_torus[2] += 1;
  const TempFile bad_torus("bad_torus.json", torus_json(bad).dump());

  const std::vector<std::pair<std::vector<std::string>, int>> matrix{
      {{"verdict", "K2T"}, 0},
      {{"verdict", "X(5)xCP1^2"}, 0},
      {{"verdict", cp3.path()}, 0},
      {{"minimal-model", "S2"}, 0},
      {{"hypersurface", "--n", "2", "--d", "4"}, 0},
      {{"j", "--g", "1", "--word", ""}, 0},
      {{"catalog"}, 0},
      {{"validate", cp3.path()}, 0},
      {{"validate", degenerate.path()}, 0},
      {{"jd", torus.path()}, 0},
      {{"--help"}, 0},
      {{}, 2},
      {{"frobnicate"}, 2},
      {{"verdict"}, 2},
      {{"verdict", "NoSuchManifold"}, 2},
      {{"verdict", "X(0)"}, 2},
      {{"hypersurface", "--n", "0", "--d", "5"}, 2},
      {{"hypersurface", "--n", "x", "--d", "5"}, 2},
      {{"hypersurface", "--n", "3"}, 2},
      {{"j", "--g", "1", "--word", "3:1"}, 2},
      {{"j", "--g", "1", "--word", "1-1"}, 2},
      {{"j", "--g", "0", "--word", ""}, 2},
      {{"minimal-model", "S2", "--max-degree", "1"}, 2},
      {{"minimal-model", "S2", "--max-degree", "-3"}, 2},
      {{"validate", "/nonexistent/file.json"}, 2},
      {{"jd", "/nonexistent/file.json"}, 2},
      {{"validate", broken.path()}, 1},
      {{"validate", not_json.path()}, 1},
      {{"validate", "--strict", degenerate.path()}, 1},
      {{"minimal-model", "K2T"}, 1},
      {{"jd", bad_torus.path()}, 1},
      {{"jd", not_json.path()}, 1},
  };
  for (const auto& [args, code] : matrix) {
    std::string line;
    for (const auto& a : args) line += a + " ";
    INFO(line);
    const auto r = call(args);
    CHECK(r.code == code);
    if (code != 0) CHECK_FALSE(r.err.empty());
    // Failures never leave partial JSON on the output stream.
    std::vector<std::string> with_json{"--json"};
    with_json.insert(with_json.end(), args.begin(), args.end());
    const auto rj = call(with_json);
    CHECK(rj.code == code);
    if (code == 1) CHECK(rj.out.empty());
    if (code == 0 && !args.empty() && args[0] != "--help") CHECK_NOTHROW((void)json::parse(rj.out));
  }
}

TEST_CASE("mapping torus and validation reports") {
  const TempFile torus("torus2.json", torus_json(dehn_twist_torus(parse_twist_word(2, "1:1,4:2"), -4, 5)).dump());
  CHECK(call({"jd", torus.path()}).out == "(4, 0, 0, 8) in basis PD(e_i)\n");
  CHECK(json::parse(call({"--json", "jd", torus.path()}).out) == json::parse(R"({"jd":["4","0","0","8"]})"));

  const TempFile degenerate("degenerate2.json", kDegenerate);
  const auto v = call({"--json", "validate", degenerate.path()});
  REQUIRE(v.code == 0);
  const json report = json::parse(v.out);
  CHECK(report["valid"] == true);
  CHECK_FALSE(report["warnings"].empty());
  const auto strict = call({"validate", "--strict", degenerate.path()});
  CHECK(strict.err.find("/ring") != std::string::npos);
}

TEST_CASE("model depth from the environment") {
  CHECK(json::parse(call({"--json", "minimal-model", "S2"}).out)["max_degree"] == 5);
  setenv("TORELLI_MAX_DEGREE", "3", 1);
  CHECK(json::parse(call({"--json", "minimal-model", "S2"}).out)["max_degree"] == 3);
  // The flag wins over the environment.
  CHECK(json::parse(call({"--json", "minimal-model", "S2", "--max-degree", "6"}).out)["max_degree"] == 6);
  setenv("TORELLI_MAX_DEGREE", "three", 1);
  CHECK(call({"minimal-model", "S2"}).code == 2);
  unsetenv("TORELLI_MAX_DEGREE");
}
