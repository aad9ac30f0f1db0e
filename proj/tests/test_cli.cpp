#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = coxcli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("coxdual_test_" + std::to_string(::getpid())) / name;
  fs::create_directories(p.parent_path());
  return p;
}

}  // namespace

TEST_CASE("summaries") {
  CHECK(run({"lattice", "--group", "A3"}).out == "lattice: true (14 elements)\n");
  CHECK(run({"verify-table1", "--group", "H3"}).out == "h = 10, exponents 1,5,9, |W| = 120: MATCH\n");
  CHECK(run({"verify-table1", "--group", "F4"}).out ==
        "h = 12, exponents 1,5,7,11, |W| = 1152: MISMATCH (printed |W| = 48)\n");
  CHECK(run({"complex", "--group", "A2"}).out == "complex: (1,4,3), chi = 0\n");
  CHECK(run({"complex", "--group", "A2", "--standard"}).out == "complex: (1,5,6,2), chi = 0\n");
  CHECK(run({"dual-salvetti", "--group", "affine:A2"}).out == "dual-salvetti: (1,9,9), chi = 1\n");
  CHECK(run({"homology", "--group", "A2"}).out == "homology of K: H0 = Z, H1 = Z, H2 = 0\n");
  CHECK(run({"presentation", "--group", "A2", "--standard", "--format", "text", "--out", scratch("p.txt")}).code ==
        0);
  CHECK(slurp(scratch("p.txt")).find("gen: a b\nrel: a b a = b a b\n") != std::string::npos);
  CHECK(run({"el-check", "--group", "A2", "--ordering", "a,b,bab"}).out.rfind("el-check: fails", 0) == 0);
  CHECK(run({"el-check", "--group", "A2", "--ordering", "a,bab,b"}).out.rfind("el-check: ok", 0) == 0);
}

TEST_CASE("every command runs") {
  for (std::string c : {"info", "enumerate", "interval", "lattice", "factorizations", "hurwitz", "el-check", "axis",
                        "axial-order", "axial-chamber-check", "complex", "dual-salvetti", "morse", "homology",
                        "presentation", "verify-table1"}) {
    CAPTURE(c);
    auto r = run({c, "--group", "A3"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind(c == "verify-table1" ? "h = " : c == "info" ? "A3:" : c, 0) == 0);
  }
}

TEST_CASE("morse artifact on affine A2") {
  const auto path = scratch("morse.json");
  auto r = run({"morse", "--group", "affine:A2", "--out", path});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["schema"] == 1);
  CHECK(j["config"]["group"] == "affine:A2");
  bool found = false;
  for (const auto& p : j["result"]["pairs"]) found |= p[0] == "[abc]" && p[1] == "[a|bc]";
  CHECK(found);
  CHECK(j["result"]["acyclic"] == true);
  CHECK(j["result"]["critical_outside_x"].empty());
}

TEST_CASE("exit codes") {
  CHECK(run({"lattice", "--group", "Q7"}).code == 2);
  CHECK(run({"lattice"}).code == 2);
  CHECK(run({"frobnicate", "--group", "A2"}).code == 2);
  CHECK(run({"lattice", "--group", "A2", "--root-depth", "0"}).code == 2);
  CHECK(run({"interval", "--group", "A2", "--format", "csv"}).code == 2);
  CHECK(run({"info", "--group", "A3", "--coxeter-order", "a,a,c"}).code == 2);
  CHECK(run({"enumerate", "--group", "affine:A2"}).code == 2);
  CHECK(run({"enumerate", "--group", "H4", "--size-cap", "100"}).code == 3);
  CHECK(run({"factorizations", "--group", "A4", "--chain-cap", "10"}).code == 3);
  // A failing property is data, not an error.
  CHECK(run({"el-check", "--group", "A2", "--ordering", "a,b,bab"}).code == 0);
}

TEST_CASE("artifacts are deterministic") {
  for (std::string c : {"interval", "morse", "axis", "homology"}) {
    CAPTURE(c);
    const auto a = scratch(c + "1.json"), b = scratch(c + "2.json");
    const std::string g = c == "morse" ? "affine:A2" : "B3";
    CHECK(run({c, "--group", g, "--seed", "5", "--out", a}).code == 0);
    CHECK(run({c, "--group", g, "--seed", "5", "--out", b}).code == 0);
    CHECK(slurp(a) == slurp(b));
  }
  const auto dot = scratch("i.dot");
  CHECK(run({"interval", "--group", "A2", "--format", "dot", "--out", dot}).code == 0);
  CHECK(slurp(dot).rfind("// config: {", 0) == 0);
}

TEST_CASE("cache") {
  const auto dir = scratch("cache");
  fs::remove_all(dir);
  const auto a = scratch("c1.json"), b = scratch("c2.json"), c = scratch("c3.json");
  auto first = run({"interval", "--group", "A3", "--cache-dir", dir, "--out", a});
  CHECK(first.err.rfind("cache: miss", 0) == 0);
  auto second = run({"interval", "--group", "A3", "--cache-dir", dir, "--out", b});
  CHECK(second.err.rfind("cache: hit", 0) == 0);
  CHECK(second.out == first.out);
  CHECK(slurp(a) == slurp(b));

  CHECK(run({"interval", "--group", "A3", "--cache-dir", dir, "--root-depth", "5"}).err.rfind("cache: miss", 0) == 0);

  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") {
      std::ofstream f(e.path(), std::ios::app);
      f << "corrupt";
    }
  auto third = run({"interval", "--group", "A3", "--cache-dir", dir, "--out", c});
  CHECK(third.code == 0);
  CHECK(third.err.find("warning") != std::string::npos);
  CHECK(slurp(c) == slurp(a));
  CHECK(run({"interval", "--group", "A3", "--cache-dir", dir}).err.rfind("cache: hit", 0) == 0);
}

TEST_CASE("sha256") {
  CHECK(coxcli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
