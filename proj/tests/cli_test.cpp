#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "decoy/cli/commands.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "decoy");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = decoy::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kArena = fixture::data("fig1-arena.json");
const std::string kDfa = fixture::data("fig2a-dfa.json");
const std::string kConfig = fixture::data("fig1-allocation.json");

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("decoy-cli-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<std::string> listed(const json& region) {
  std::set<std::string> out;
  for (const auto& s : region["states"]) out.insert(s["state"].get<std::string>());
  return out;
}

}  // namespace

TEST_CASE("solve") {
  const Run r = run({"solve", "--arena", kArena, "--dfa", kDfa, "--decoys", "l,m"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(listed(j["dswin"]) == std::set<std::string>{"(l, 0)", "(m, 0)", "(h, 0)", "(i, 0)", "(e, 0)"});
  CHECK(listed(j["win1_2"]) == std::set<std::string>{"(a, 0)", "(b, 0)"});

  const Run empty = run({"solve", "--arena", kArena, "--dfa", kDfa});
  CHECK(empty.code == 0);
  CHECK(empty.err.find("warning") != std::string::npos);
  CHECK(json::parse(empty.out)["dswin"]["size"] == 0);
}

TEST_CASE("solve writes DOT with the deceptive coloring") {
  const fs::path dir = scratch("solve");
  const Run r = run({"solve", "--arena", kArena, "--dfa", kDfa, "--decoys", "h,k", "--trim", "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(json::parse(slurp(dir / "solve.json"))["dswin"]["size"] == 7);
  const std::string dot = slurp(dir / "deceptive.dot");
  CHECK(dot.find("\"(k, 1)\" [shape=box, style=filled, fillcolor=red]") != std::string::npos);
  CHECK(dot.find("\"(c, 0)\" [shape=box, style=filled, fillcolor=lightblue]") != std::string::npos);
  CHECK(dot.find("\"(n, 3)\" [shape=ellipse, peripheries=2]") != std::string::npos);
  CHECK(dot.find("\"(a, 0)\"") == std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("allocate methods and comparison") {
  for (const auto& [method, chosen, value] :
       std::vector<std::tuple<std::string, std::vector<std::string>, int>>{
           {"greedymax", {"k", "l"}, 8}, {"setcover", {"k", "m"}, 7}, {"exact", {"k", "l"}, 8}}) {
    const Run r = run({"allocate", "--arena", kArena, "--dfa", kDfa, "--candidates", "j,k,l,m", "--k", "2",
                       "--method", method});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["chosen"] == chosen);
    CHECK(j["objective"] == value);
  }
  const Run cmp = run({"allocate", "--config", kConfig, "--compare"});
  REQUIRE(cmp.code == 0);
  CHECK(json::parse(cmp.out)["comparison"].size() == 3);
}

TEST_CASE("reports are byte-identical across runs") {
  const auto a = run({"allocate", "--config", kConfig, "--compare"});
  const auto b = run({"allocate", "--config", kConfig, "--compare"});
  CHECK(a.out == b.out);
  const auto g1 = run({"verify", "--batch", "5", "--seed", "3"});
  const auto g2 = run({"verify", "--batch", "5", "--seed", "3"});
  CHECK(g1.out == g2.out);
}

TEST_CASE("exit codes") {
  CHECK(run({"solve", "--arena", "/nonexistent.json", "--dfa", kDfa}).code == 1);
  CHECK(run({"solve", "--arena", kArena}).code == 1);
  CHECK(run({"solve", "--arena", kArena, "--dfa", kDfa, "--spec", "F n"}).code == 1);
  CHECK(run({"solve", "--arena", kArena, "--spec", "F (n"}).code == 1);
  CHECK(run({"solve", "--arena", kArena, "--dfa", kDfa, "--decoys", "zz"}).code == 1);
  CHECK(run({"allocate", "--config", kConfig, "--method", "best"}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"allocate", "--config", kConfig, "--method", "exact", "--cap", "5"}).code == 3);
  const Run t = run({"verify", "--arena", kArena, "--dfa", kDfa, "--candidates", "h,k", "--tamper"});
  CHECK(t.code == 2);
  CHECK(json::parse(t.out)["status"] == "fail");
  CHECK(run({"verify", "--arena", kArena, "--dfa", kDfa, "--candidates", "j,k,l,m"}).code == 0);
}

TEST_CASE("verify reports the union hypothesis witness") {
  const Run r = run({"verify", "--arena", kArena, "--dfa", kDfa, "--candidates", "h,k"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const auto& w = j["conditions"]["union_hypothesis"]["witnesses"][0];
  CHECK(w["D"] == std::vector<std::string>{"h"});
  CHECK(w["added"] == std::vector<std::string>{"k"});
  CHECK(w["states"][0] == "(c, 0)");
}

TEST_CASE("gen, export and formula input") {
  const fs::path dir = scratch("gen");
  REQUIRE(run({"gen", "--seed", "4", "--out", dir.string()}).code == 0);
  const Run r = run({"allocate", "--config", (dir / "config.json").string(), "--method", "exact"});
  CHECK(r.code == 0);
  const fs::path ex = scratch("export");
  CHECK(run({"export", "--arena", kArena, "--spec", "F n", "--trim", "--out", ex.string()}).code == 0);
  CHECK(fs::exists(ex / "product.dot"));
  CHECK(fs::exists(ex / "dfa.json"));
  const Run s = run({"solve", "--arena", kArena, "--spec", "F (n | o)", "--decoys", "k"});
  CHECK(s.code == 0);
  fs::remove_all(dir);
  fs::remove_all(ex);
}
