#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "cli.hpp"
#include "json.hpp"
#include "qaoa/graphs.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qaoa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = qaoa::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  omp_set_num_threads(omp_get_num_procs());
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qaoa_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("gen-graph honors the MaxCut filter and writes a sidecar") {
  TempDir dir;
  const auto g = dir / "g.txt";
  const auto r = run({"gen-graph", "--n", "20", "--d", "3", "--maxcut", "26", "--seed", "1", "--out", g});
  REQUIRE(r.status == qaoa::cli::kExitOk);
  const auto graph = qaoa::parse_edge_list(slurp(g));
  CHECK(graph.is_regular(3));
  CHECK(qaoa::brute_force_maxcut(graph).cmax == 26);
  const auto meta = json::parse(slurp(g + ".meta.json"));
  CHECK(meta["command"] == "gen-graph");
  CHECK(meta["config"]["seed"] == "1");
  CHECK(r.err.find("gen-graph") != std::string::npos);

  const auto again = dir / "g2.txt";
  run({"gen-graph", "--n", "20", "--d", "3", "--maxcut", "26", "--seed", "1", "--out", again});
  CHECK(slurp(g) == slurp(again));

  const auto mc = run({"maxcut", "--graph", g});
  CHECK(json::parse(mc.out)["result"]["cmax"] == 26);
}

TEST_CASE("evaluate reports F equal to the edge sum") {
  TempDir dir;
  const auto g = dir / "g.txt";
  const auto a = dir / "a.json";
  REQUIRE(run({"gen-graph", "--n", "12", "--d", "3", "--seed", "4", "--out", g}).status == 0);
  std::ofstream(a) << R"({"p": 2, "gamma": [0.4, 0.9], "beta": [0.7, 0.2]})";
  const auto r = run({"evaluate", "--graph", g, "--angles", a});
  REQUIRE(r.status == 0);
  const auto doc = json::parse(r.out);
  const auto edges = doc["result"]["edge_expectations"].get<std::vector<double>>();
  CHECK(edges.size() == 18);
  CHECK(std::abs(std::accumulate(edges.begin(), edges.end(), 0.0) - doc["result"]["objective"].get<double>()) < 1e-9);
  CHECK(doc["config"]["angles"] == a);
}

TEST_CASE("optimize writes reusable angles") {
  TempDir dir;
  const auto g = dir / "g.txt";
  const auto a = dir / "best.json";
  REQUIRE(run({"gen-graph", "--n", "10", "--d", "3", "--seed", "2", "--out", g}).status == 0);
  const auto r = run({"optimize", "--graph", g, "--p", "2", "--restarts", "3", "--angles-out", a, "--seed", "8"});
  REQUIRE(r.status == 0);
  const double best = json::parse(r.out)["result"]["best_value"].get<double>();
  const auto ev = run({"evaluate", "--graph", g, "--angles", a});
  CHECK(json::parse(ev.out)["result"]["objective"].get<double>() == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("exit statuses") {
  TempDir dir;
  CHECK(run({}).status == qaoa::cli::kExitConfig);
  CHECK(run({"frobnicate"}).status == qaoa::cli::kExitConfig);
  CHECK(run({"bound", "--t", "1"}).status == qaoa::cli::kExitConfig);
  CHECK(run({"bound", "--t", "1", "--L", "3", "--bogus", "1"}).status == qaoa::cli::kExitConfig);
  CHECK(run({"maxcut", "--graph", dir / "missing.txt"}).status == qaoa::cli::kExitConfig);
  CHECK(run({"bound", "--t", "-1", "--L", "3"}).status == qaoa::cli::kExitConfig);

  const auto gen = run({"gen-graph", "--n", "12", "--d", "3", "--maxcut", "18", "--max-tries", "2", "--seed", "1"});
  CHECK(gen.status == qaoa::cli::kExitGeneration);
  CHECK(gen.err.find("observed") != std::string::npos);

  CHECK(run({"gen-graph", "--n", "40", "--d", "3", "--maxcut", "50"}).status == qaoa::cli::kExitResource);
  CHECK(run({"transfer", "--n-eval", "28"}).status == qaoa::cli::kExitResource);
  CHECK(run({"concentration", "--n", "22", "--max-qubits", "20"}).status == qaoa::cli::kExitResource);

  const auto help = run({"bound", "--help"});
  CHECK(help.status == 0);
}

TEST_CASE("config files") {
  TempDir dir;
  const auto cfg = dir / "run.toml";
  std::ofstream(cfg) << "[bound]\nt = 20\nL = 190\n";
  const auto r = run({"--config", cfg, "bound"});
  REQUIRE(r.status == 0);
  CHECK(json::parse(r.out)["result"]["bound"].get<double>() == doctest::Approx(0.01484).epsilon(1e-3));

  const auto bad = dir / "bad.toml";
  std::ofstream(bad) << "[bound]\nt = 20\nL = 190\nunknown_field = 3\n";
  CHECK(run({"--config", bad, "bound"}).status == qaoa::cli::kExitConfig);
  CHECK(json::parse(r.out)["config"]["t"] == "20");
}

TEST_CASE("help lists every flag with its default") {
  for (const char* cmd : {"gen-graph", "maxcut", "census", "neighborhood", "evaluate", "sample", "optimize",
                          "landscape", "leapfrog", "concentration", "correlation", "transfer", "bound"}) {
    CAPTURE(cmd);
    const auto r = run({cmd, "--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("--seed UINT [1]") != std::string::npos);
    CHECK(r.out.find("--threads") != std::string::npos);
    CHECK(r.out.find("--max-qubits") != std::string::npos);
  }
  const auto t = run({"transfer", "--help"}).out;
  CHECK(t.find("[200]") != std::string::npos);
  CHECK(t.find("[24]") != std::string::npos);
  const auto c = run({"concentration", "--help"}).out;
  CHECK(c.find("--maxcut INT [26]") != std::string::npos);
}

TEST_CASE("output is byte-identical across thread counts") {
  TempDir dir;
  const std::vector<std::string> base{"concentration", "--n",        "12",   "--p-list",    "1,2",
                                      "--instances",   "4",          "--maxcut", "-1",      "--train-n",
                                      "8",             "--restarts", "3",    "--seed",      "5"};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return a;
  };
  const auto one = run(with({"--threads", "1", "--out", dir / "one.json"}));
  const auto three = run(with({"--threads", "3", "--out", dir / "three.json"}));
  REQUIRE(one.status == 0);
  REQUIRE(three.status == 0);
  // --out is part of the embedded config, so compare after normalizing it.
  auto a = json::parse(slurp(dir / "one.json"));
  auto b = json::parse(slurp(dir / "three.json"));
  CHECK(a["config"]["out"] != b["config"]["out"]);
  a["config"].erase("out");
  b["config"].erase("out");
  CHECK(a.dump() == b.dump());

  const auto s1 = run(with({"--threads", "1"}));
  const auto s3 = run(with({"--threads", "3"}));
  CHECK(s1.out == s3.out);
  CHECK(json::parse(s1.out)["config"].contains("threads") == false);

  const auto csv1 = run(with({"--threads", "1", "--format", "csv"}));
  const auto csv3 = run(with({"--threads", "2", "--format", "csv"}));
  CHECK(csv1.out == csv3.out);
  CHECK(csv1.out.rfind("p,regime,count,mean,std\n", 0) == 0);
}

TEST_CASE("remaining subcommands run") {
  TempDir dir;
  const auto g = dir / "g.txt";
  const auto a = dir / "a.json";
  REQUIRE(run({"gen-graph", "--n", "10", "--d", "3", "--seed", "3", "--out", g}).status == 0);
  std::ofstream(a) << R"({"p": 1, "gamma": [0.6], "beta": [0.4]})";

  const auto census = json::parse(run({"census", "--graph", g}).out);
  const auto& w = census["result"];
  CHECK(w["w_shared0"].get<int>() + w["w_shared1"].get<int>() + w["w_shared2"].get<int>() == 15);

  const auto nb = json::parse(run({"neighborhood", "--graph", g, "--edge", "0", "--radius", "1"}).out);
  CHECK(nb["result"]["n"].get<int>() <= 6);

  const auto sample = json::parse(run({"sample", "--graph", g, "--angles", a, "--shots", "10", "--seed", "2"}).out);
  CHECK(sample["result"]["samples"].size() == 10);

  const auto land = run({"landscape", "--graph", g, "--resolution", "3", "--format", "csv"});
  CHECK(land.status == 0);
  CHECK(std::count(land.out.begin(), land.out.end(), '\n') == 3);

  const auto leap = run({"leapfrog", "--sizes", "8,10", "--p", "1", "--restarts", "2", "--evals", "2"});
  CHECK(leap.status == 0);
  CHECK(json::parse(leap.out)["result"].size() == 2);

  const auto corr = run({"correlation", "--n", "10", "--p", "1", "--instances", "4", "--maxcut", "-1",
                         "--train-n", "8", "--restarts", "2", "--regimes", "Random,High"});
  REQUIRE(corr.status == 0);
  CHECK(json::parse(corr.out)["result"]["reports"].size() == 2);

  const auto xfer = run({"transfer", "--n-train", "8", "--n-eval", "10", "--p", "1", "--restarts", "2",
                         "--evals", "3", "--format", "csv"});
  CHECK(xfer.status == 0);
  CHECK(xfer.out.rfind("n_train,n_eval,p,", 0) == 0);
}
